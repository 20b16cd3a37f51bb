#include "isomono/time_reduction.hpp"

#include "isomono/linalg.hpp"

#include <cmath>
#include <numbers>

namespace isomono {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

cplx ipow(cplx z, int k) {
    cplx out = 1.0;
    const cplx base = k >= 0 ? z : 1.0 / z;
    for (int i = 0; i < std::abs(k); ++i) out *= base;
    return out;
}

// Root of z of order m on the given branch, starting from the principal one.
cplx branch_root(cplx z, int m, int branch) {
    const cplx principal = std::pow(z, 1.0 / m);
    return principal * std::polar(1.0, 2.0 * std::numbers::pi * branch / m);
}

// Number of isomonodromic pole-time indices k = 1..count at X_s.
int pole_iso_count(const TimeChart& chart, int s) {
    const int rs = chart.structure.r[s];
    if (chart.chart_case == ChartCase::r_inf_1_single) return rs - 2;
    return rs - 1;
}

bool position_is_iso(ChartCase c, int s) {
    switch (c) {
        case ChartCase::r_inf_at_least_3: return true;
        case ChartCase::r_inf_2: return s >= 1;
        case ChartCase::r_inf_1_multi: return s >= 2;
        case ChartCase::r_inf_1_single: return false;
    }
    return false;
}

// Sheet difference of the irregular times at infinity encoded by the chart, k = 1..r_inf-1.
cvec infinity_differences(const TimeChart& chart) {
    const int r = chart.structure.r_inf;
    cvec delta(r, 0.0);
    if (chart.chart_case == ChartCase::r_inf_2) delta[1] = 2.0 * chart.T2;
    if (chart.chart_case != ChartCase::r_inf_at_least_3) return delta;
    const cplx T1 = chart.T1, T2 = chart.T2;
    delta[r - 1] = 2.0 * ipow(T2, r - 1);
    delta[r - 2] = 2.0 * (r - 2) * T1 * ipow(T2, r - 2);
    for (int k = 1; k <= r - 3; ++k) {
        cplx sum = 2.0 * factorial(r - 2) / (factorial(k - 1) * factorial(r - 1 - k)) * ipow(T1, r - 1 - k);
        for (int j = 2; j <= r - 1 - k; ++j)
            sum += factorial(r - 2 - j) / (factorial(k - 1) * factorial(r - 1 - k - j)) * ipow(T1, r - 1 - j - k) *
                   chart.tau_inf[r - 1 - j];
        delta[k] = ipow(T2, k) * sum;
    }
    return delta;
}

}  // namespace

const char* to_string(ChartCase c) {
    switch (c) {
        case ChartCase::r_inf_at_least_3: return "r_inf>=3";
        case ChartCase::r_inf_2: return "r_inf=2";
        case ChartCase::r_inf_1_multi: return "r_inf=1,n>=2";
        case ChartCase::r_inf_1_single: return "r_inf=1,n=1";
    }
    return "?";
}

ChartCase chart_case_of(const PoleStructure& structure) {
    if (structure.r_inf >= 3) return ChartCase::r_inf_at_least_3;
    if (structure.r_inf == 2) {
        if (structure.n() < 1) throw ValidationError("r_inf = 2 needs at least one finite pole");
        return ChartCase::r_inf_2;
    }
    if (structure.n() >= 2) return ChartCase::r_inf_1_multi;
    if (structure.n() == 1 && structure.r[0] >= 2) return ChartCase::r_inf_1_single;
    throw ValidationError("r_inf = 1 needs two finite poles or one pole of order at least 2");
}

std::string IsoTimeId::name() const {
    switch (kind) {
        case Kind::infinity: return "tau_inf_" + std::to_string(k);
        case Kind::pole: return "tau_X" + std::to_string(s + 1) + "_" + std::to_string(k);
        case Kind::position: return "X_tilde_" + std::to_string(s + 1);
    }
    return "?";
}

std::vector<IsoTimeId> TimeChart::iso_ids() const {
    std::vector<IsoTimeId> ids;
    if (chart_case == ChartCase::r_inf_at_least_3)
        for (int j = 1; j <= structure.r_inf - 3; ++j) ids.push_back({IsoTimeId::Kind::infinity, -1, j});
    for (int s = 0; s < structure.n(); ++s)
        for (int k = 1; k <= pole_iso_count(*this, s); ++k) ids.push_back({IsoTimeId::Kind::pole, s, k});
    for (int s = 0; s < structure.n(); ++s)
        if (position_is_iso(chart_case, s)) ids.push_back({IsoTimeId::Kind::position, s, 0});
    return ids;
}

cplx TimeChart::iso_value(const IsoTimeId& id) const {
    switch (id.kind) {
        case IsoTimeId::Kind::infinity: return tau_inf.at(id.k);
        case IsoTimeId::Kind::pole: return tau_X.at(id.s).at(id.k);
        case IsoTimeId::Kind::position: return X_tilde.at(id.s);
    }
    return 0.0;
}

void TimeChart::set_iso_value(const IsoTimeId& id, cplx value) {
    switch (id.kind) {
        case IsoTimeId::Kind::infinity: tau_inf.at(id.k) = value; break;
        case IsoTimeId::Kind::pole: tau_X.at(id.s).at(id.k) = value; break;
        case IsoTimeId::Kind::position: X_tilde.at(id.s) = value; break;
    }
}

cvec TimeChart::iso_values() const {
    cvec out;
    for (const auto& id : iso_ids()) out.push_back(iso_value(id));
    return out;
}

int TimeChart::trivial_count() const {
    int dim = 2 * (structure.r_inf - 1) + structure.n();
    for (int rs : structure.r) dim += 2 * (rs - 1);
    return dim - static_cast<int>(iso_ids().size());
}

TimeChart forward_time_map(const ConnectionConfig& config, int branch) {
    TimeChart chart;
    chart.structure = config.structure;
    chart.chart_case = chart_case_of(config.structure);
    chart.branch = branch;
    const int r = config.r_inf();
    const int n = config.n();
    const auto& X = config.structure.X;

    chart.T_inf.resize(r);
    for (int k = 0; k < r; ++k) chart.T_inf[k] = config.t_inf[0][k] + config.t_inf[1][k];
    chart.theta_inf = config.delta_inf(0);
    for (int s = 0; s < n; ++s) {
        cvec sums(config.structure.r[s]);
        for (int k = 0; k < config.structure.r[s]; ++k) sums[k] = config.t_X[s][0][k] + config.t_X[s][1][k];
        chart.T_X.push_back(sums);
        chart.theta_X.push_back(config.delta_X(s, 0));
    }

    switch (chart.chart_case) {
        case ChartCase::r_inf_at_least_3: {
            const int m = r - 1;
            chart.T2 = branch_root(config.delta_inf(m) / 2.0, m, branch);
            if (std::abs(chart.T2) == 0.0) throw ValidationError("T2 vanishes: leading times at infinity coincide");
            chart.T1 = config.delta_inf(r - 2) / (2.0 * (r - 2) * ipow(chart.T2, r - 2));
            break;
        }
        case ChartCase::r_inf_2:
            chart.T2 = config.delta_inf(1) / 2.0;
            if (std::abs(chart.T2) == 0.0) throw ValidationError("T2 vanishes: leading times at infinity coincide");
            chart.T1 = -X[0] * chart.T2;
            break;
        case ChartCase::r_inf_1_multi:
            if (X[1] == X[0]) throw ValidationError("T2 undefined: X_1 = X_2");
            chart.T2 = 1.0 / (X[1] - X[0]);
            chart.T1 = -X[0] * chart.T2;
            break;
        case ChartCase::r_inf_1_single: {
            const int m = config.structure.r[0] - 1;
            const cplx root = branch_root(config.delta_X(0, m) / 2.0, m, branch);
            if (std::abs(root) == 0.0) throw ValidationError("T2 undefined: leading times at X_1 coincide");
            chart.T2 = 1.0 / root;
            chart.T1 = -X[0] * chart.T2;
            break;
        }
    }

    const cplx T1 = chart.T1, T2 = chart.T2;
    chart.tau_inf.assign(std::max(r - 2, 1), 0.0);
    if (chart.chart_case == ChartCase::r_inf_at_least_3) {
        const cplx B = T1 / T2;
        for (int j = 1; j <= r - 3; ++j) {
            cplx sum = 0.0;
            for (int i = 0; i <= r - j - 3; ++i)
                sum += ((i % 2) ? -1.0 : 1.0) * factorial(j + i - 1) / (factorial(i) * factorial(j - 1)) * ipow(B, i) *
                       config.delta_inf(j + i);
            const double sign = ((r - j) % 2) ? -1.0 : 1.0;
            const double tail = 2.0 * sign * factorial(r - 2) /
                                ((r - 1 - j) * factorial(r - j - 3) * factorial(j - 1));
            chart.tau_inf[j] = ipow(T2, -j) * sum + tail * ipow(T1, r - 1 - j);
        }
    }
    for (int s = 0; s < n; ++s) {
        cvec tau(config.structure.r[s], 0.0);
        for (int k = 1; k < config.structure.r[s]; ++k) tau[k] = config.delta_X(s, k) * ipow(T2, k);
        chart.tau_X.push_back(tau);
        chart.X_tilde.push_back(T2 * X[s] + T1);
    }
    return chart;
}

ConnectionConfig inverse_time_map(const TimeChart& chart, cplx hbar) {
    const int r = chart.structure.r_inf;
    const int n = chart.structure.n();
    if (std::abs(chart.T2) == 0.0) throw ValidationError("chart has T2 = 0");
    if ((int)chart.T_inf.size() != r || (int)chart.T_X.size() != n || (int)chart.tau_X.size() != n ||
        (int)chart.X_tilde.size() != n || (int)chart.theta_X.size() != n)
        throw ValidationError("chart block sizes do not match the pole structure");
    if (chart.chart_case != chart_case_of(chart.structure))
        throw ValidationError("chart case does not match the pole structure");

    ConnectionConfig config;
    config.structure.r_inf = r;
    config.structure.r = chart.structure.r;
    config.hbar = hbar;

    cvec delta = infinity_differences(chart);
    delta[0] = chart.theta_inf;
    config.t_inf = {cvec(r), cvec(r)};
    for (int k = 0; k < r; ++k) {
        config.t_inf[0][k] = 0.5 * chart.T_inf[k] + 0.5 * delta[k];
        config.t_inf[1][k] = 0.5 * chart.T_inf[k] - 0.5 * delta[k];
    }

    const cplx T1 = chart.T1, T2 = chart.T2;
    for (int s = 0; s < n; ++s) {
        const int rs = chart.structure.r[s];
        if ((int)chart.T_X[s].size() != rs || (int)chart.tau_X[s].size() != rs)
            throw ValidationError("chart pole block sizes do not match the pole orders");
        SheetPair sp{cvec(rs), cvec(rs)};
        for (int k = 0; k < rs; ++k) {
            cplx d = k == 0 ? chart.theta_X[s] : ipow(T2, -k) * chart.tau_X[s][k];
            if (chart.chart_case == ChartCase::r_inf_1_single && k == rs - 1) d = 2.0 * ipow(T2, -k);
            sp[0][k] = 0.5 * chart.T_X[s][k] + 0.5 * d;
            sp[1][k] = 0.5 * chart.T_X[s][k] - 0.5 * d;
        }
        config.t_X.push_back(sp);

        cplx x_tilde = chart.X_tilde[s];
        if (!position_is_iso(chart.chart_case, s)) x_tilde = (s == 1) ? 1.0 : 0.0;
        config.structure.X.push_back((x_tilde - T1) / T2);
    }
    return config;
}

DeformationVector dual_derivative_coefficients(const TimeChart& chart, const IsoTimeId& id) {
    ConnectionConfig shape;
    shape.structure = chart.structure;
    shape.structure.X.assign(chart.structure.n(), 0.0);
    DeformationVector a = DeformationVector::zero(shape);
    const cplx T1 = chart.T1, T2 = chart.T2;
    bool known = false;
    for (const auto& iso : chart.iso_ids()) known = known || iso == id;
    if (!known) throw ValidationError("isomonodromic time " + id.name() + " does not belong to case " +
                                      to_string(chart.chart_case));
    switch (id.kind) {
        case IsoTimeId::Kind::infinity:
            for (int k = 1; k <= id.k; ++k) {
                const cplx c = 0.5 * ipow(T2, k) * binomial(id.k - 1, k - 1) * ipow(T1, id.k - k);
                a.a_inf[0][k] = c;
                a.a_inf[1][k] = -c;
            }
            break;
        case IsoTimeId::Kind::pole:
            a.a_X[id.s][0][id.k] = 0.5 * ipow(T2, -id.k);
            a.a_X[id.s][1][id.k] = -0.5 * ipow(T2, -id.k);
            break;
        case IsoTimeId::Kind::position: a.a_pos[id.s] = 1.0 / T2; break;
    }
    return a;
}

DarbouxState shift_coordinates(const ConnectionConfig& config, const DarbouxState& state) {
    const TimeChart chart = forward_time_map(config);
    const RationalFunction P1 = compute_P1(config);
    DarbouxState out;
    for (int j = 0; j < state.size(); ++j) {
        out.q.push_back(chart.T2 * state.q[j] + chart.T1);
        out.p.push_back((state.p[j] - 0.5 * P1.evaluate(state.q[j])) / chart.T2);
    }
    return out;
}

DarbouxState unshift_coordinates(const ConnectionConfig& config, const DarbouxState& shifted) {
    const TimeChart chart = forward_time_map(config);
    const RationalFunction P1 = compute_P1(config);
    DarbouxState out;
    for (int j = 0; j < shifted.size(); ++j) {
        const cplx q = (shifted.q[j] - chart.T1) / chart.T2;
        out.q.push_back(q);
        out.p.push_back(chart.T2 * shifted.p[j] + 0.5 * P1.evaluate(q));
    }
    return out;
}

bool is_canonical(const ConnectionConfig& config, double tol) {
    const TimeChart chart = forward_time_map(config);
    if (std::abs(chart.T1) > tol || std::abs(chart.T2 - 1.0) > tol) return false;
    for (cplx t : chart.T_inf)
        if (std::abs(t) > tol) return false;
    for (const auto& v : chart.T_X)
        for (cplx t : v)
            if (std::abs(t) > tol) return false;
    return true;
}

std::map<IsoTimeId, cplx> reduced_hamiltonians(const ConnectionConfig& config, const DarbouxState& state,
                                               const IsospectralHamiltonians& H) {
    (void)state;
    if (!is_canonical(config)) throw ValidationError("trivial times are not canonical");
    const TimeChart chart = forward_time_map(config);
    const int r = config.r_inf();
    std::map<IsoTimeId, cplx> out;

    if (r >= 4) {
        const int m = r - 3;
        cvec column(m, 0.0), rhs(m);
        column[0] = 2.0;
        for (int i = 2; i < m; ++i) column[i] = chart.tau_inf[r - 1 - i];
        for (int i = 0; i < m; ++i) rhs[i] = H.H_inf[r - 4 - i];
        const cvec y = lower_toeplitz_solve(column, rhs);
        for (int k = 1; k <= m; ++k) out[{IsoTimeId::Kind::infinity, -1, k}] = y[k - 1] / double(k);
    }
    for (int s = 0; s < config.n(); ++s) {
        const int rs = config.structure.r[s];
        if (rs >= 2) {
            cvec column(rs - 1), rhs(rs - 1);
            for (int i = 0; i < rs - 1; ++i) {
                column[i] = chart.tau_X[s][rs - 1 - i];
                rhs[i] = H.H_X[s][rs - 1 - i];
            }
            const cvec y = lower_toeplitz_solve(column, rhs);
            for (int k = 1; k <= pole_iso_count(chart, s); ++k)
                out[{IsoTimeId::Kind::pole, s, k}] = y[k - 1] / double(k);
        }
        if (position_is_iso(chart.chart_case, s)) out[{IsoTimeId::Kind::position, s, 0}] = H.H_X[s][0];
    }
    return out;
}

cplx reduced_hamiltonian_direct(const ConnectionConfig& config, const DarbouxState& state,
                                const DeformationVector& alpha, const IsospectralHamiltonians& H) {
    const DeformationCoefficients co = solve_coefficients(config, state, alpha);
    cplx ham = 0.0;
    for (int k = 0; k <= config.r_inf() - 4; ++k) ham += co.nu_infinity(k + 1) * H.H_inf[k];
    for (int s = 0; s < config.n(); ++s) {
        for (int k = 2; k <= config.structure.r[s]; ++k) ham -= co.nu_X[s][k - 1] * H.H_X[s][k - 1];
        ham += alpha.a_pos[s] * H.H_X[s][0];
    }
    return ham;
}

ConnectionConfig specialize_canonical(const PoleStructure& orders, const cvec& iso_times, cplx theta_inf,
                                      const cvec& theta_X, cplx hbar) {
    TimeChart chart;
    chart.structure = orders;
    chart.structure.X.assign(orders.n(), 0.0);
    chart.chart_case = chart_case_of(orders);
    const int r = orders.r_inf;
    const int n = orders.n();
    if ((int)theta_X.size() != n) throw ValidationError("one monodromy per finite pole is required");
    chart.T1 = 0.0;
    chart.T2 = 1.0;
    chart.T_inf.assign(r, 0.0);
    chart.theta_inf = 2.0 * theta_inf;
    chart.tau_inf.assign(std::max(r - 2, 1), 0.0);
    for (int s = 0; s < n; ++s) {
        chart.T_X.push_back(cvec(orders.r[s], 0.0));
        chart.tau_X.push_back(cvec(orders.r[s], 0.0));
        chart.theta_X.push_back(2.0 * theta_X[s]);
        chart.X_tilde.push_back(s == 1 ? 1.0 : 0.0);
    }
    const auto ids = chart.iso_ids();
    if (iso_times.size() != ids.size())
        throw ValidationError("expected " + std::to_string(ids.size()) + " isomonodromic times");
    for (size_t i = 0; i < ids.size(); ++i) chart.set_iso_value(ids[i], iso_times[i]);
    return inverse_time_map(chart, hbar);
}

namespace {

void require_index(bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("index out of range for ") + what);
}

}  // namespace

DeformationVector trivial_v_inf(const ConnectionConfig& config, int k) {
    require_index(k >= 1 && k < config.r_inf(), "v_inf");
    DeformationVector a = DeformationVector::zero(config);
    a.a_inf[0][k] = a.a_inf[1][k] = 1.0;
    return a;
}

DeformationVector trivial_v_X(const ConnectionConfig& config, int s, int k) {
    require_index(s >= 0 && s < config.n() && k >= 1 && k < config.structure.r[s], "v_X");
    DeformationVector a = DeformationVector::zero(config);
    a.a_X[s][0][k] = a.a_X[s][1][k] = 1.0;
    return a;
}

DeformationVector trivial_u_inf(const ConnectionConfig& config, int k) {
    require_index(k >= 1 && k < config.r_inf(), "u_inf");
    DeformationVector a = DeformationVector::zero(config);
    const int r = config.r_inf();
    for (int i = 0; i < 2; ++i)
        for (int m = 1; m <= k; ++m) a.a_inf[i][m] = double(m) * config.t_inf[i][r - 1 - k + m];
    return a;
}

DeformationVector trivial_u_X(const ConnectionConfig& config, int s, int k) {
    require_index(s >= 0 && s < config.n() && k >= 1 && k < config.structure.r[s], "u_X");
    DeformationVector a = DeformationVector::zero(config);
    const int rs = config.structure.r[s];
    for (int i = 0; i < 2; ++i)
        for (int m = 1; m <= k; ++m) a.a_X[s][i][m] = double(m) * config.t_X[s][i][rs - 1 - k + m];
    return a;
}

DeformationVector trivial_a(const ConnectionConfig& config) {
    DeformationVector a = DeformationVector::zero(config);
    for (int i = 0; i < 2; ++i) {
        for (int k = 1; k < config.r_inf(); ++k) a.a_inf[i][k] = double(k) * config.t_inf[i][k];
        for (int s = 0; s < config.n(); ++s)
            for (int k = 1; k < config.structure.r[s]; ++k) a.a_X[s][i][k] = -double(k) * config.t_X[s][i][k];
    }
    for (int s = 0; s < config.n(); ++s) a.a_pos[s] = -config.structure.X[s];
    return a;
}

DeformationVector trivial_b(const ConnectionConfig& config) {
    DeformationVector a = DeformationVector::zero(config);
    for (int i = 0; i < 2; ++i)
        for (int k = 1; k <= config.r_inf() - 2; ++k) a.a_inf[i][k] = double(k) * config.t_inf[i][k + 1];
    for (int s = 0; s < config.n(); ++s) a.a_pos[s] = -1.0;
    return a;
}

DeformationVector trivial_w(const ConnectionConfig& config, int s) {
    require_index(s >= 0 && s < config.n(), "w");
    DeformationVector a = DeformationVector::zero(config);
    a.a_pos[s] = 1.0;
    return a;
}

FlowSchedule trivial_flow_schedule(const ConnectionConfig& config, TrivialFlow kind, int s_index, int k) {
    FlowSchedule sch;
    switch (kind) {
        case TrivialFlow::v_inf: return linear_schedule(config, trivial_v_inf(config, k), 0.0);
        case TrivialFlow::v_X: return linear_schedule(config, trivial_v_X(config, s_index, k), 0.0);
        case TrivialFlow::a:
            // t_{inf,k} e^{k s}, t_{X_s,k} e^{-k s}, X_s e^{-s}
            sch.config_at = [config](cplx s) {
                ConnectionConfig c = config;
                for (int i = 0; i < 2; ++i) {
                    for (int k2 = 1; k2 < c.r_inf(); ++k2) c.t_inf[i][k2] *= std::exp(double(k2) * s);
                    for (int p = 0; p < c.n(); ++p)
                        for (int k2 = 1; k2 < c.structure.r[p]; ++k2) c.t_X[p][i][k2] *= std::exp(-double(k2) * s);
                }
                for (auto& x : c.structure.X) x *= std::exp(-s);
                return c;
            };
            sch.direction_at = [sch](cplx s) { return trivial_a(sch.config_at(s)); };
            return sch;
        case TrivialFlow::b:
            // nilpotent shift t_k -> sum_m C(k+m-1, m) s^m t_{k+m}, X_s - s
            sch.config_at = [config](cplx s) {
                ConnectionConfig c = config;
                const int r = c.r_inf();
                for (int i = 0; i < 2; ++i)
                    for (int k2 = 1; k2 < r; ++k2) {
                        cplx v = 0.0;
                        for (int m = 0; k2 + m <= r - 1; ++m)
                            v += binomial(k2 + m - 1, m) * ipow(s, m) * config.t_inf[i][k2 + m];
                        c.t_inf[i][k2] = v;
                    }
                for (auto& x : c.structure.X) x -= s;
                return c;
            };
            sch.direction_at = [sch](cplx s) { return trivial_b(sch.config_at(s)); };
            return sch;
    }
    return sch;
}

FlowSchedule iso_time_schedule(const TimeChart& chart, const IsoTimeId& id, cplx hbar) {
    FlowSchedule sch;
    sch.config_at = [chart, id, hbar](cplx s) {
        TimeChart c = chart;
        c.set_iso_value(id, s);
        return inverse_time_map(c, hbar);
    };
    sch.direction_at = [chart, id](cplx s) {
        TimeChart c = chart;
        c.set_iso_value(id, s);
        return dual_derivative_coefficients(c, id);
    };
    return sch;
}

}  // namespace isomono
