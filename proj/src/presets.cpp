#include "isomono/presets.hpp"

#include <algorithm>
#include <array>

namespace isomono {

namespace {

struct PresetShape {
    PainleveId id;
    const char* name;
    int r_inf;
    std::vector<int> orders;
    int iso_count;
};

const std::vector<PresetShape>& shapes() {
    static const std::vector<PresetShape> table = {
        {PainleveId::P2, "P2", 4, {}, 1},         {PainleveId::P3, "P3", 2, {2}, 1},
        {PainleveId::P4, "P4", 3, {1}, 1},        {PainleveId::P4_JM, "P4_JM", 3, {1}, 1},
        {PainleveId::P5, "P5", 1, {1, 2}, 1},     {PainleveId::P6, "P6", 1, {1, 1, 1}, 1},
        {PainleveId::P2H2, "P2H2", 5, {}, 2},
    };
    return table;
}

const PresetShape& shape_of(PainleveId id) {
    for (const auto& s : shapes())
        if (s.id == id) return s;
    throw ValidationError("unknown preset id");
}

void require_params(PainleveId id, const PainleveParameters& params, const cvec& iso_times) {
    const auto& sh = shape_of(id);
    if ((int)params.theta_X.size() != (int)sh.orders.size())
        throw ValidationError(std::string(sh.name) + " expects " + std::to_string(sh.orders.size()) +
                              " finite-pole monodromies");
    if ((int)iso_times.size() != sh.iso_count)
        throw ValidationError(std::string(sh.name) + " expects " + std::to_string(sh.iso_count) +
                              " isomonodromic times");
}

// X_1 = 0, t_inf^(1) = (theta, t, 1), t_X1^(1) = theta_X; sheet 2 is the negative.
ConnectionConfig jimbo_miwa_p4_config(const PainleveParameters& params, cplx t) {
    ConnectionConfig c;
    c.structure.r_inf = 3;
    c.structure.r = {1};
    c.structure.X = {0.0};
    c.hbar = params.hbar;
    c.t_inf[0] = {params.theta_inf, t, 1.0};
    c.t_inf[1] = {-params.theta_inf, -t, -1.0};
    c.t_X.push_back({cvec{params.theta_X[0]}, cvec{-params.theta_X[0]}});
    return c;
}

DeformationVector jimbo_miwa_p4_direction(const ConnectionConfig& config) {
    DeformationVector a = DeformationVector::zero(config);
    a.a_inf[0][1] = 1.0;
    a.a_inf[1][1] = -1.0;
    return a;
}

cplx sq(cplx z) { return z * z; }

void require_away(cplx q, cplx point, const char* what) {
    if (std::abs(q - point) < 1e-12) throw PoleEvaluationError(std::string("q at the fixed singular point ") + what);
}

}  // namespace

const char* to_string(PainleveId id) { return shape_of(id).name; }

PainleveId painleve_id_from_string(const std::string& name) {
    for (const auto& s : shapes())
        if (name == s.name) return s.id;
    throw ValidationError("unknown preset id '" + name + "'");
}

std::vector<PainleveId> all_painleve_ids() {
    std::vector<PainleveId> ids;
    for (const auto& s : shapes()) ids.push_back(s.id);
    return ids;
}

int finite_pole_count(PainleveId id) { return static_cast<int>(shape_of(id).orders.size()); }
int iso_time_count(PainleveId id) { return shape_of(id).iso_count; }

PainlevePreset painleve_preset(PainleveId id, const PainleveParameters& params, const cvec& iso_times,
                               const DarbouxState& initial) {
    require_params(id, params, iso_times);
    const auto& sh = shape_of(id);
    PainlevePreset out;
    out.id = id;
    out.params = params;
    out.iso_times = iso_times;
    out.state = initial;
    if (id == PainleveId::P4_JM) {
        out.config = jimbo_miwa_p4_config(params, iso_times[0]);
        out.directions.push_back(jimbo_miwa_p4_direction(out.config));
    } else {
        PoleStructure orders;
        orders.r_inf = sh.r_inf;
        orders.r = sh.orders;
        out.config = specialize_canonical(orders, iso_times, params.theta_inf, params.theta_X, params.hbar);
        const TimeChart chart = forward_time_map(out.config);
        for (const auto& tid : chart.iso_ids()) out.directions.push_back(dual_derivative_coefficients(chart, tid));
    }
    if (out.state.size() != out.config.genus())
        throw ValidationError(std::string(sh.name) + " expects " + std::to_string(out.config.genus()) +
                              " Darboux pairs");
    return out;
}

FlowSchedule PainlevePreset::schedule(int which) const {
    if (which < 0 || which >= (int)directions.size()) throw ValidationError("isomonodromic time index out of range");
    if (id == PainleveId::P4_JM) return linear_schedule(config, directions[0], iso_times[0]);
    const TimeChart chart = forward_time_map(config);
    return iso_time_schedule(chart, chart.iso_ids()[which], params.hbar);
}

EvolutionField painleve_displayed_field(PainleveId id, const PainleveParameters& params, const cvec& iso_times,
                                        const DarbouxState& state, int which) {
    require_params(id, params, iso_times);
    const cplx h = params.hbar;
    const cplx th = params.theta_inf;
    const cvec& tx = params.theta_X;
    EvolutionField f;
    if (id == PainleveId::P2H2) {
        const cplx q1 = state.q[0], q2 = state.q[1], p1 = state.p[0], p2 = state.p[1];
        const cplx tau1 = iso_times[0], tau2 = iso_times[1];
        const cplx d = q1 - q2;
        const cplx quart1 = 5.0 * pow(q1, 4) + 4.0 * pow(q1, 3) * q2 + 3.0 * q1 * q1 * q2 * q2 +
                            2.0 * q1 * pow(q2, 3) + pow(q2, 4);
        const cplx quart2 = 5.0 * pow(q2, 4) + 4.0 * pow(q2, 3) * q1 + 3.0 * q2 * q2 * q1 * q1 +
                            2.0 * q2 * pow(q1, 3) + pow(q1, 4);
        const cplx quad1 = 3.0 * q1 * q1 + 2.0 * q1 * q2 + q2 * q2;
        const cplx quad2 = 3.0 * q2 * q2 + 2.0 * q2 * q1 + q1 * q1;
        const cplx pp = (p1 * p1 - p2 * p2) / (d * d);
        if (which == 0) {
            f.dq = {p1 / d, -p2 / d};
            const cplx common = tau2 * tau2 / 8.0 + th - h / 2.0;
            f.dp = {pp / 2.0 + quart1 / 2.0 + (q1 + q2 / 2.0) * tau1 + quad1 * tau2 / 2.0 + common,
                    -pp / 2.0 + quart2 / 2.0 + (q2 + q1 / 2.0) * tau1 + quad2 * tau2 / 2.0 + common};
        } else {
            f.dq = {-p1 * q2 / (2.0 * d) - h / (4.0 * d), p2 * q1 / (2.0 * d) + h / (4.0 * d)};
            const cplx hp = h * (p1 - p2) / (4.0 * d * d);
            f.dp = {-q2 * pp / 4.0 - hp - q2 * quart1 / 4.0 - q2 * (2.0 * q1 + q2) / 4.0 * tau1 -
                        q2 * quad1 / 4.0 * tau2 - q2 / 16.0 * tau2 * tau2 - q2 * (2.0 * th - h) / 4.0,
                    q1 * pp / 4.0 + hp - q1 * quart2 / 4.0 - q1 * (2.0 * q2 + q1) / 4.0 * tau1 -
                        q1 * quad2 / 4.0 * tau2 - q1 / 16.0 * tau2 * tau2 - q1 * (2.0 * th - h) / 4.0};
        }
        return f;
    }
    const cplx q = state.q[0], p = state.p[0], t = iso_times[0];
    cplx dq = 0.0, dp = 0.0;
    switch (id) {
        case PainleveId::P2:
            dq = p;
            dp = 2.0 * q * q * q + t * q + th - h / 2.0;
            break;
        case PainleveId::P3:
            dq = 2.0 * q * q * p / t + h * q / t;
            dp = -2.0 * q * p * p / t - h * p / t - t / (2.0 * q * q * q) - tx[0] / (q * q) + 2.0 * q / t +
                 (2.0 * th - h) / t;
            break;
        case PainleveId::P4:
            dq = 2.0 * p * (q - t) + h;
            dp = -p * p - sq(tx[0]) / sq(q - t) + 3.0 * q * q - 2.0 * t * q + 2.0 * th - h;
            break;
        case PainleveId::P4_JM:
            dq = 2.0 * p * q;
            dp = -p * p - sq(tx[0]) / (q * q) + (t * t - h + 2.0 * th) + 4.0 * t * q + 3.0 * q * q;
            break;
        case PainleveId::P5:
            dq = 2.0 * q * sq(q - 1.0) * p / t + h * q * (q - 1.0) / t;
            dp = -(3.0 * q - 1.0) * (q - 1.0) * p * p / t - h * (2.0 * q - 1.0) * p / t - sq(tx[0]) / (t * q * q) -
                 t / (2.0 * pow(q - 1.0, 3)) - (4.0 * tx[1] + t) / (4.0 * sq(q - 1.0)) + th * (th - h) / t;
            break;
        case PainleveId::P6: {
            const cplx tt = t * (t - 1.0);
            dq = 2.0 * q * (q - 1.0) * (q - t) * p / tt + h * q * (q - 1.0) / tt;
            dp = -(3.0 * q * q - 2.0 * t * q - 2.0 * q + t) * p * p / tt - h * (2.0 * q - 1.0) * p / tt -
                 sq(tx[0]) / ((t - 1.0) * q * q) + sq(tx[1]) / (t * sq(q - 1.0)) - sq(tx[2]) / sq(q - t) +
                 th * (th - h) / tt;
            break;
        }
        case PainleveId::P2H2: break;
    }
    f.dq = {dq};
    f.dp = {dp};
    return f;
}

cplx painleve_rhs_oracle(PainleveId id, cplx q, cplx dq, cplx t, const PainleveParameters& params) {
    const cplx h = params.hbar;
    const cplx th = params.theta_inf;
    const cvec& tx = params.theta_X;
    if ((int)tx.size() != finite_pole_count(id))
        throw ValidationError(std::string(to_string(id)) + " expects " + std::to_string(finite_pole_count(id)) +
                              " finite-pole monodromies");
    const cplx hq = h * dq;
    switch (id) {
        case PainleveId::P2: return 2.0 * q * q * q + t * q + th - h / 2.0;
        case PainleveId::P3: {
            require_away(q, 0.0, "0");
            const cplx alpha = 2.0 * (2.0 * th - h), beta = -2.0 * tx[0], gamma = 4.0, delta = -1.0;
            return hq * hq / q - h * h * dq / t + (alpha * q * q + gamma * q * q * q) / (t * t) + beta / t + delta / q;
        }
        case PainleveId::P4:
        case PainleveId::P4_JM: {
            require_away(q, 0.0, "0");
            const cplx rhs = 0.5 * hq * hq + 6.0 * pow(q, 4) + 8.0 * t * q * q * q +
                             2.0 * (t * t + 2.0 * th - h) * q * q - 2.0 * sq(tx[0]);
            return rhs / q;
        }
        case PainleveId::P5: {
            require_away(q, 0.0, "0");
            require_away(q, 1.0, "1");
            const cplx alpha = sq(2.0 * th - h) / 2.0, beta = -2.0 * sq(tx[0]), gamma = -2.0 * tx[1], delta = -0.5;
            return (1.0 / (2.0 * q) + 1.0 / (q - 1.0)) * hq * hq - h * h * dq / t +
                   sq(q - 1.0) / (t * t) * (alpha * q + beta / q) + gamma * q / t + delta * q * (q + 1.0) / (q - 1.0);
        }
        case PainleveId::P6: {
            require_away(q, 0.0, "0");
            require_away(q, 1.0, "1");
            require_away(q, t, "t");
            const cplx alpha = sq(2.0 * th - h) / 2.0, beta = -2.0 * sq(tx[0]), gamma = 2.0 * sq(tx[1]),
                       delta = -(2.0 * sq(tx[2]) - h * h / 2.0);
            return 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - t)) * hq * hq -
                   h * hq * (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (q - t)) +
                   q * (q - 1.0) * (q - t) / (t * t * sq(t - 1.0)) *
                       (alpha + beta * t / (q * q) + gamma * (t - 1.0) / sq(q - 1.0) +
                        delta * t * (t - 1.0) / sq(q - t));
        }
        case PainleveId::P2H2: break;
    }
    throw ValidationError("no second-order oracle for " + std::string(to_string(id)));
}

namespace {

using Coords = std::array<cplx, 4>;  // q1, q2, p1, p2

// (Q1, Q2, P1, P2) polynomial coordinates of the second P2-hierarchy member.
Coords p2h2_polynomial_map(const Coords& x, cplx tau1, cplx tau2) {
    const cplx q1 = x[0], q2 = x[1], p1 = x[2], p2 = x[3];
    const cplx d = q1 - q2;
    return {-(q1 + q2), q1 * q2 - tau2 / 4.0,
            -(p1 * q1 - p2 * q2) / d + pow(q1, 3) + q1 * q1 * q2 + q1 * q2 * q2 + pow(q2, 3) +
                0.5 * (q1 + q2) * tau2 + 0.5 * tau1,
            -(p1 - p2) / d + q1 * q1 + q1 * q2 + q2 * q2 + 0.5 * tau2};
}

Coords p2h2_polynomial_flow(const Coords& y, cplx tau1, cplx tau2, cplx th, cplx h, int which) {
    const cplx Q1 = y[0], Q2 = y[1], P1 = y[2], P2 = y[3];
    if (which == 0)
        return {P2 - Q1 * Q1 + Q2 - tau2 / 4.0, P2 * Q1 - Q1 * Q2 + P1 - tau2 / 4.0 * Q1 - tau1 / 2.0,
                -0.5 * P2 * P2 + Q2 * P2 + 2.0 * P1 * Q1 + tau2 / 4.0 * P2 - th + h, P2 * Q1 - P1};
    return {0.5 * P2 * Q1 - 0.5 * Q1 * Q2 - tau2 / 8.0 * Q1 + 0.5 * P1 - tau1 / 4.0,
            0.5 * Q1 * Q1 * P2 - 0.5 * Q2 * P2 + 0.5 * P1 * Q1 - 0.5 * Q2 * Q2 - tau2 / 8.0 * P2 - tau1 / 4.0 * Q1 +
                tau2 * tau2 / 32.0,
            -0.5 * P2 * P2 * Q1 - 0.5 * P1 * P2 + 0.5 * Q2 * P1 + tau2 / 8.0 * P1 + tau1 / 4.0 * P2,
            0.25 * P2 * P2 + P2 * Q2 + 0.5 * P1 * Q1 - 0.5 * (th - h)};
}

}  // namespace

double p2h2_polynomial_residual(const PainleveParameters& params, const cvec& iso_times, const DarbouxState& state) {
    const PainlevePreset pre = painleve_preset(PainleveId::P2H2, params, iso_times, state);
    const Coords x = {state.q[0], state.q[1], state.p[0], state.p[1]};
    const double eps = 1e-6;
    const cplx h = params.hbar;
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        const EvolutionField f = evolution_field(pre.config, state, pre.directions[which]);
        const Coords field = {f.dq[0], f.dq[1], f.dp[0], f.dp[1]};
        // hbar dY/dtau = J field + hbar dY/dtau|explicit, both by central differences
        Coords chain{};
        for (int j = 0; j < 4; ++j) {
            Coords xp = x, xm = x;
            xp[j] += eps;
            xm[j] -= eps;
            const Coords yp = p2h2_polynomial_map(xp, iso_times[0], iso_times[1]);
            const Coords ym = p2h2_polynomial_map(xm, iso_times[0], iso_times[1]);
            for (int i = 0; i < 4; ++i) chain[i] += (yp[i] - ym[i]) / (2.0 * eps) * field[j];
        }
        cvec tp = iso_times, tm = iso_times;
        tp[which] += eps;
        tm[which] -= eps;
        const Coords yp = p2h2_polynomial_map(x, tp[0], tp[1]);
        const Coords ym = p2h2_polynomial_map(x, tm[0], tm[1]);
        for (int i = 0; i < 4; ++i) chain[i] += h * (yp[i] - ym[i]) / (2.0 * eps);
        const Coords y = p2h2_polynomial_map(x, iso_times[0], iso_times[1]);
        const Coords poly = p2h2_polynomial_flow(y, iso_times[0], iso_times[1], params.theta_inf, h, which);
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(chain[i] - poly[i]) / std::max(1.0, std::abs(poly[i])));
    }
    return worst;
}

FuchsianPreset fuchsian_preset(int n, cplx theta_inf, const cvec& theta_X, const cvec& positions, cplx hbar) {
    if (n < 3) throw ValidationError("Fuchsian presets need n >= 3 poles");
    if ((int)theta_X.size() != n) throw ValidationError("one monodromy per finite pole is required");
    if ((int)positions.size() != n - 2) throw ValidationError("expected n - 2 free pole positions");
    PoleStructure orders;
    orders.r_inf = 1;
    orders.r.assign(n, 1);
    FuchsianPreset out;
    out.positions = positions;
    out.config = specialize_canonical(orders, positions, theta_inf, theta_X, hbar);
    const ValidationReport rep = validate(out.config);
    if (!rep.ok) throw ValidationError(rep.failures.front());
    const TimeChart chart = forward_time_map(out.config);
    for (const auto& id : chart.iso_ids()) out.directions.push_back(dual_derivative_coefficients(chart, id));
    return out;
}

}  // namespace isomono
