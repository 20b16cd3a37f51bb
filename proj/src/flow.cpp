#include "isomono/flow.hpp"

#include <cmath>
#include <algorithm>
#include <iomanip>

namespace isomono {

cplx hamiltonian_value(const ConnectionConfig& config, const DarbouxState& state,
                       const DeformationCoefficients& co, const IsospectralHamiltonians& H) {
    const int r = config.r_inf();
    const int g = state.size();
    const cplx hb = config.hbar;
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;

    cplx ham = 0.0;
    for (int k = 0; k <= r - 4; ++k) ham += co.nu_infinity(k + 1) * H.H_inf[k];
    cplx sum_h1 = 0.0, weighted_h = 0.0;
    for (int s = 0; s < config.n(); ++s) {
        for (int k = 2; k <= rs[s]; ++k) ham -= co.nu_X[s][k - 1] * H.H_X[s][k - 1];
        ham += -co.nu_X[s][0] * H.H_X[s][0];
        sum_h1 += H.H_X[s][0];
        weighted_h += X[s] * H.H_X[s][0];
        if (rs[s] >= 2) weighted_h += H.H_X[s][1];
    }
    cplx sum_p = 0.0, sum_qp = 0.0;
    for (int j = 0; j < g; ++j) {
        const cplx q = state.q[j];
        cplx cq = 0.0;
        for (int k = r - 1; k >= 1; --k) cq = (cq + co.c_inf[k]) * q;
        // c_{inf,0} = nu_{inf,-1}/2 depends on q when r_inf = 1; it is omitted there
        if (r >= 2) cq += co.c_inf[0];
        for (int s = 0; s < config.n(); ++s)
            for (int k = 1; k < rs[s]; ++k) cq += co.c_X[s][k] * std::pow(q - X[s], -k);
        ham -= hb * cq;
        sum_p += state.p[j];
        sum_qp += q * state.p[j];
    }
    const cplx nm1 = co.nu_minus1();
    const cplx n0 = co.nu_zero();
    ham += nm1 * weighted_h + n0 * sum_h1;
    if (r == 1 || r == 2) ham -= (sum_h1 - hb * sum_p) * n0;
    if (r == 1) ham -= (weighted_h - hb * sum_qp) * nm1;
    ham -= hb * n0 * sum_p + hb * nm1 * sum_qp;
    return ham;
}

EvolutionField evolution_field(const ConnectionConfig& config, const DarbouxState& state,
                               const DeformationCoefficients& co, const IsospectralHamiltonians& H) {
    const int r = config.r_inf();
    const int g = state.size();
    const cplx hb = config.hbar;
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;
    const RationalFunction P1 = compute_P1(config);
    const RationalFunction dP1 = differentiate(P1);
    const RationalFunction dP2 = differentiate(compute_P2_tilde(config));
    const cplx lead = config.t_inf[0][r - 1];

    EvolutionField f{cvec(g), cvec(g)};
    for (int j = 0; j < g; ++j) {
        const cplx q = state.q[j];
        const cplx p = state.p[j];
        cplx pole_sum = 0.0, pole_sum2 = 0.0;
        for (int s = 0; s < config.n(); ++s) {
            pole_sum += hb * static_cast<double>(rs[s]) / (q - X[s]);
            pole_sum2 += hb * static_cast<double>(rs[s]) / ((q - X[s]) * (q - X[s]));
        }
        cplx dq = 2.0 * co.mu[j] * (p - 0.5 * P1.evaluate(q) + 0.5 * pole_sum) - hb * co.nu_zero() -
                  hb * co.nu_minus1() * q;
        cplx dp = 0.0;
        for (int i = 0; i < g; ++i) {
            if (i == j) continue;
            const cplx d = q - state.q[i];
            dq -= hb * (co.mu[j] + co.mu[i]) / d;
            dp += hb * (co.mu[i] + co.mu[j]) * (state.p[i] - p) / (d * d);
        }
        cplx bracket = p * dP1.evaluate(q) + p * pole_sum2 - dP2.evaluate(q);
        for (int k = 1; k <= r - 4; ++k) bracket += static_cast<double>(k) * H.H_inf[k] * std::pow(q, k - 1);
        for (int s = 0; s < config.n(); ++s)
            for (int k = 1; k <= rs[s]; ++k)
                bracket -= static_cast<double>(k) * H.H_X[s][k - 1] * std::pow(q - X[s], -k - 1);
        if (r >= 3) bracket -= hb * static_cast<double>(r - 3) * lead * std::pow(q, r - 4);
        dp += co.mu[j] * bracket + hb * co.nu_minus1() * p;
        for (int k = 1; k <= r - 1; ++k) dp += hb * static_cast<double>(k) * co.c_inf[k] * std::pow(q, k - 1);
        for (int s = 0; s < config.n(); ++s)
            for (int k = 1; k < rs[s]; ++k)
                dp -= hb * static_cast<double>(k) * co.c_X[s][k] * std::pow(q - X[s], -k - 1);
        f.dq[j] = dq;
        f.dp[j] = dp;
    }
    return f;
}

EvolutionField evolution_field(const ConnectionConfig& config, const DarbouxState& state,
                               const DeformationVector& alpha) {
    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    return evolution_field(config, state, solve_coefficients(config, state, alpha), H);
}

cplx hamiltonian_value(const ConnectionConfig& config, const DarbouxState& state, const DeformationVector& alpha) {
    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    return hamiltonian_value(config, state, solve_coefficients(config, state, alpha), H);
}

FlowSchedule linear_schedule(const ConnectionConfig& config, const DeformationVector& alpha, cplx s0) {
    FlowSchedule sch;
    sch.config_at = [config, alpha, s0](cplx s) { return advance_times(config, alpha, s - s0); };
    sch.direction_at = [alpha](cplx) { return alpha; };
    return sch;
}

namespace {

using Vec = cvec;  // q_1..q_g, p_1..p_g

Vec pack(const DarbouxState& st) {
    Vec y = st.q;
    y.insert(y.end(), st.p.begin(), st.p.end());
    return y;
}

DarbouxState unpack(const Vec& y) {
    const size_t g = y.size() / 2;
    return {Vec(y.begin(), y.begin() + g), Vec(y.begin() + g, y.end())};
}

Vec axpy(const Vec& y, cplx a, const Vec& k) {
    Vec out = y;
    for (size_t i = 0; i < y.size(); ++i) out[i] += a * k[i];
    return out;
}

void check_nodes(const ConnectionConfig& config, const DarbouxState& st, double tol_sep) {
    for (int i = 0; i < st.size(); ++i) {
        if (!std::isfinite(std::abs(st.q[i])) || !std::isfinite(std::abs(st.p[i])))
            throw NodeCollisionError("state diverged");
        for (int j = i + 1; j < st.size(); ++j)
            if (std::abs(st.q[i] - st.q[j]) < tol_sep) throw NodeCollisionError("nodes collided");
        for (cplx x : config.structure.X)
            if (std::abs(st.q[i] - x) < tol_sep) throw NodeCollisionError("node reached a pole");
    }
}

}  // namespace

Trajectory integrate_flow(const FlowSchedule& schedule, const DarbouxState& initial, cplx s_begin, cplx s_end,
                          const StepControl& control) {
    Trajectory traj;
    const double span = std::abs(s_end - s_begin);
    const cplx unit = span > 0.0 ? (s_end - s_begin) / span : cplx(0.0);

    auto rhs = [&](cplx s, const Vec& y) {
        const ConnectionConfig c = schedule.config_at(s);
        const DarbouxState st = unpack(y);
        check_nodes(c, st, control.tol_sep);
        const EvolutionField f = evolution_field(c, st, schedule.direction_at(s));
        Vec out = f.dq;
        out.insert(out.end(), f.dp.begin(), f.dp.end());
        for (auto& v : out) v /= c.hbar;
        return out;
    };
    auto record = [&](cplx s, const Vec& y) {
        const DarbouxState st = unpack(y);
        cplx ham = hamiltonian_value(schedule.config_at(s), st, schedule.direction_at(s));
        traj.points.push_back({s, st, ham});
    };

    Vec y = pack(initial);
    double done = 0.0;
    try {
        check_nodes(schedule.config_at(s_begin), initial, control.tol_sep);
        record(s_begin, y);
        if (control.method == Integrator::rk4) {
            const long steps = std::max(1L, static_cast<long>(std::ceil(span / control.step - 1e-9)));
            const double h = span / static_cast<double>(steps);
            for (long i = 0; i < steps && span > 0.0; ++i) {
                const cplx s = s_begin + unit * (h * static_cast<double>(i));
                const cplx hs = unit * h;
                Vec k1 = rhs(s, y);
                Vec k2 = rhs(s + 0.5 * hs, axpy(y, 0.5 * hs, k1));
                Vec k3 = rhs(s + 0.5 * hs, axpy(y, 0.5 * hs, k2));
                Vec k4 = rhs(s + hs, axpy(y, hs, k3));
                for (size_t m = 0; m < y.size(); ++m) y[m] += hs / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
                done = h * static_cast<double>(i + 1);
                record(s_begin + unit * done, y);
            }
        } else {
            // Dormand-Prince 5(4) with standard step-size control.
            static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
            static const double a[7][6] = {{0},
                                           {1.0 / 5},
                                           {3.0 / 40, 9.0 / 40},
                                           {44.0 / 45, -56.0 / 15, 32.0 / 9},
                                           {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
                                           {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
                                           {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
            static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
            static const double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                         -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
            double h = std::min(control.step, span);
            while (done < span * (1.0 - 1e-14)) {
                h = std::min(h, span - done);
                const cplx s = s_begin + unit * done;
                const cplx hs = unit * h;
                std::vector<Vec> k(7);
                for (int st = 0; st < 7; ++st) {
                    Vec yi = y;
                    for (int m = 0; m < st; ++m)
                        if (a[st][m] != 0.0) yi = axpy(yi, hs * a[st][m], k[m]);
                    k[st] = rhs(s + hs * c[st], yi);
                }
                Vec y5 = y, y4 = y;
                for (int st = 0; st < 7; ++st) {
                    y5 = axpy(y5, hs * b5[st], k[st]);
                    y4 = axpy(y4, hs * b4[st], k[st]);
                }
                double err = 0.0;
                for (size_t m = 0; m < y.size(); ++m)
                    err = std::max(err, std::abs(y5[m] - y4[m]) / (1.0 + std::abs(y[m])));
                if (err <= control.tolerance || h <= control.min_step) {
                    y = y5;
                    done += h;
                    record(s_begin + unit * done, y);
                }
                const double factor = err > 0.0 ? 0.9 * std::pow(control.tolerance / err, 0.2) : 5.0;
                h *= std::clamp(factor, 0.2, 5.0);
                if (h < control.min_step) h = control.min_step;
            }
        }
    } catch (const Error& e) {
        traj.completed = false;
        traj.stop_reason = e.what();
    }
    return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const int g = traj.points.empty() ? 0 : traj.points.front().state.size();
    out << "time_re,time_im";
    for (int j = 1; j <= g; ++j) out << ",q" << j << "_re,q" << j << "_im";
    for (int j = 1; j <= g; ++j) out << ",p" << j << "_re,p" << j << "_im";
    out << ",ham_re,ham_im\n";
    out << std::setprecision(17);
    for (const auto& pt : traj.points) {
        out << pt.time.real() << ',' << pt.time.imag();
        for (cplx v : pt.state.q) out << ',' << v.real() << ',' << v.imag();
        for (cplx v : pt.state.p) out << ',' << v.real() << ',' << v.imag();
        out << ',' << pt.hamiltonian.real() << ',' << pt.hamiltonian.imag() << '\n';
    }
}

}  // namespace isomono
