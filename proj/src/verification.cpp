#include "isomono/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef ISOMONO_HAVE_OPENMP
#include <omp.h>
#endif

namespace isomono {

void CheckReport::add(std::string item, double residual, double tolerance) {
    // NaN residuals never pass
    items.push_back({std::move(item), residual, tolerance, residual <= tolerance});
}

bool CheckReport::passed() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass; });
}

double CheckReport::worst_residual() const {
    double w = 0.0;
    for (const auto& i : items) w = std::isnan(i.residual) ? i.residual : std::max(w, i.residual);
    return w;
}

CheckTolerances CheckTolerances::uniform(double tol) {
    CheckTolerances t;
    t.zero_curvature = t.hamiltonianity = t.trivial_field = t.trivial_times = t.trivial_invariance = t.residue =
        t.reduction = t.round_trip = t.det_V = tol;
    return t;
}

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_rel(const Mat2& a, const Mat2& b) {
    const double scale = std::max(1.0, b.max_abs());
    return (a - b).max_abs() / scale;
}

DarbouxState step_state(const DarbouxState& st, const EvolutionField& f, cplx hbar, cplx eps) {
    DarbouxState out = st;
    for (int j = 0; j < st.size(); ++j) {
        out.q[j] += eps * f.dq[j] / hbar;
        out.p[j] += eps * f.dp[j] / hbar;
    }
    return out;
}

Mat2 evaluate_derivative(const LaxMatrix& A, cplx lambda) {
    return {differentiate(A.e11).evaluate(lambda), differentiate(A.e12).evaluate(lambda),
            differentiate(A.e21).evaluate(lambda), differentiate(A.e22).evaluate(lambda)};
}

double state_distance(const DarbouxState& a, const DarbouxState& b) {
    double d = 0.0;
    for (int j = 0; j < a.size(); ++j) d = std::max({d, std::abs(a.q[j] - b.q[j]), std::abs(a.p[j] - b.p[j])});
    return d;
}

double config_distance(const ConnectionConfig& a, const ConnectionConfig& b) {
    double e = 0.0;
    for (int i = 0; i < 2; ++i)
        for (size_t k = 0; k < a.t_inf[i].size(); ++k) e = std::max(e, std::abs(a.t_inf[i][k] - b.t_inf[i][k]));
    for (int s = 0; s < a.n(); ++s) {
        for (int i = 0; i < 2; ++i)
            for (size_t k = 0; k < a.t_X[s][i].size(); ++k)
                e = std::max(e, std::abs(a.t_X[s][i][k] - b.t_X[s][i][k]));
        e = std::max(e, std::abs(a.structure.X[s] - b.structure.X[s]));
    }
    return e;
}

}  // namespace

CheckReport check_zero_curvature(const ConnectionConfig& config, const DarbouxState& state,
                                 const DeformationVector& alpha, const cvec& lambdas, double eps, double tol) {
    CheckReport rep{"zero_curvature", {}};
    const cplx hbar = config.hbar;
    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    const DeformationCoefficients co = solve_coefficients(config, state, alpha);
    const EvolutionField f = evolution_field(config, state, co, H);
    const LaxMatrix L = build_L_companion(config, state, H);
    const LaxMatrix A = build_A_companion(config, state, co, H, L);

    auto shifted_L = [&](double steps) {
        const ConnectionConfig c = advance_times(config, alpha, steps * eps);
        const DarbouxState s = step_state(state, f, hbar, steps * eps);
        return build_L_companion(c, s, solve_isospectral_H(c, s));
    };
    // five-point symmetric stencil along the straight line (times, state) + s (alpha, field / hbar)
    const LaxMatrix Lp2 = shifted_L(2.0), Lp1 = shifted_L(1.0), Lm1 = shifted_L(-1.0), Lm2 = shifted_L(-2.0);
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const cplx lam = lambdas[i];
        const Mat2 lhs = (Lm2.evaluate(lam) - Lp2.evaluate(lam) + (Lp1.evaluate(lam) - Lm1.evaluate(lam)) * 8.0) *
                         (hbar / (12.0 * eps));
        const Mat2 Lv = L.evaluate(lam), Av = A.evaluate(lam);
        const Mat2 rhs = Av * Lv - Lv * Av + evaluate_derivative(A, lam) * hbar;
        rep.add("lambda_" + std::to_string(i), max_rel(lhs, rhs), tol);
    }
    return rep;
}

CheckReport check_hamiltonianity(const ConnectionConfig& config, const DarbouxState& state,
                                 const DeformationVector& alpha, double eps, double tol, double H_perturbation) {
    CheckReport rep{"hamiltonianity", {}};
    IsospectralHamiltonians H = solve_isospectral_H(config, state);
    if (H_perturbation != 0.0) {
        // H_{inf,0} never enters the field, so a finite-pole entry or the highest one at infinity is used.
        if (!H.H_X.empty())
            H.H_X[0].at(0) += H_perturbation;
        else
            H.H_inf.at(H.H_inf.size() - 1) += H_perturbation;
    }
    const EvolutionField f = evolution_field(config, state, solve_coefficients(config, state, alpha), H);
    double scale = 1.0;
    for (int j = 0; j < state.size(); ++j) scale = std::max({scale, std::abs(f.dq[j]), std::abs(f.dp[j])});
    auto ham = [&](const DarbouxState& s) { return hamiltonian_value(config, s, alpha); };
    for (int j = 0; j < state.size(); ++j) {
        DarbouxState a = state, b = state;
        a.p[j] += eps;
        b.p[j] -= eps;
        const cplx dHdp = (ham(a) - ham(b)) / (2.0 * eps);
        a = state;
        b = state;
        a.q[j] += eps;
        b.q[j] -= eps;
        const cplx dHdq = (ham(a) - ham(b)) / (2.0 * eps);
        rep.add("dq_" + std::to_string(j + 1), std::abs(dHdp - f.dq[j]) / scale, tol);
        rep.add("dp_" + std::to_string(j + 1), std::abs(dHdq + f.dp[j]) / scale, tol);
    }
    return rep;
}

CheckReport check_trivial_identities(const ConnectionConfig& config, const DarbouxState& state, double eps,
                                     double tol_field, double tol_times) {
    CheckReport rep{"trivial_identities", {}};
    const cplx hb = config.hbar;
    const int g = state.size();
    auto add_field = [&](const std::string& name, const DeformationVector& a, auto expected_dq, auto expected_dp) {
        const EvolutionField f = evolution_field(config, state, a);
        double eq = 0.0, ep = 0.0;
        for (int j = 0; j < g; ++j) {
            eq = std::max(eq, rel(f.dq[j], expected_dq(j)));
            ep = std::max(ep, rel(f.dp[j], expected_dp(j)));
        }
        rep.add(name + ":q", eq, tol_field);
        rep.add(name + ":p", ep, tol_field);
    };
    add_field("a", trivial_a(config), [&](int j) { return -hb * state.q[j]; }, [&](int j) { return hb * state.p[j]; });
    add_field("b", trivial_b(config), [&](int) { return -hb; }, [&](int) { return cplx(0.0); });
    for (int k = 1; k < config.r_inf(); ++k)
        add_field("v_inf_" + std::to_string(k), trivial_v_inf(config, k), [&](int) { return cplx(0.0); },
                  [&](int j) { return -hb * std::pow(state.q[j], k - 1); });
    for (int s = 0; s < config.n(); ++s)
        for (int k = 1; k < config.structure.r[s]; ++k)
            add_field("v_X" + std::to_string(s + 1) + "_" + std::to_string(k), trivial_v_X(config, s, k),
                      [&](int) { return cplx(0.0); },
                      [&](int j) { return hb * std::pow(state.q[j] - config.structure.X[s], -k - 1); });

    const TimeChart here = forward_time_map(config);
    for (TrivialFlow kind : {TrivialFlow::a, TrivialFlow::b}) {
        const FlowSchedule sch = trivial_flow_schedule(config, kind);
        const TimeChart p = forward_time_map(sch.config_at(eps), here.branch);
        const TimeChart m = forward_time_map(sch.config_at(-eps), here.branch);
        const cplx dT1 = hb * (p.T1 - m.T1) / (2.0 * eps);
        const cplx dT2 = hb * (p.T2 - m.T2) / (2.0 * eps);
        const std::string flow = kind == TrivialFlow::a ? "a" : "b";
        const cplx want_T1 = kind == TrivialFlow::a ? cplx(0.0) : hb * here.T2;
        const cplx want_T2 = kind == TrivialFlow::a ? hb * here.T2 : cplx(0.0);
        rep.add(flow + ":T1", rel(dT1, want_T1), tol_times);
        rep.add(flow + ":T2", rel(dT2, want_T2), tol_times);
    }
    return rep;
}

CheckReport check_trivial_invariance(const ConnectionConfig& config, const DarbouxState& state, double span,
                                     double tol) {
    CheckReport rep{"trivial_invariance", {}};
    const DarbouxState start = shift_coordinates(config, state);
    auto run = [&](const std::string& name, const FlowSchedule& sch) {
        StepControl sc;
        sc.step = 1e-3;
        const Trajectory tr = integrate_flow(sch, state, 0.0, span, sc);
        if (!tr.completed) {
            rep.add(name, std::numeric_limits<double>::infinity(), tol);
            return;
        }
        const auto& last = tr.points.back();
        const DarbouxState end = shift_coordinates(sch.config_at(last.time), last.state);
        rep.add(name, state_distance(start, end), tol);
    };
    run("a", trivial_flow_schedule(config, TrivialFlow::a));
    run("b", trivial_flow_schedule(config, TrivialFlow::b));
    for (int k = 1; k < config.r_inf(); ++k)
        run("v_inf_" + std::to_string(k), trivial_flow_schedule(config, TrivialFlow::v_inf, 0, k));
    for (int s = 0; s < config.n(); ++s)
        for (int k = 1; k < config.structure.r[s]; ++k)
            run("v_X" + std::to_string(s + 1) + "_" + std::to_string(k),
                trivial_flow_schedule(config, TrivialFlow::v_X, s, k));
    return rep;
}

CheckReport check_residue_crosscheck(const ConnectionConfig& config, const DarbouxState& state, double tol) {
    if (!is_canonical(config)) throw ValidationError("trivial times are not canonical");
    CheckReport rep{"residue_crosscheck", {}};
    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    const IsospectralHamiltonians R = hamiltonians_from_trace_residues(config, state, H);
    for (size_t k = 0; k < H.H_inf.size(); ++k) rep.add("H_inf_" + std::to_string(k), rel(R.H_inf[k], H.H_inf[k]), tol);
    for (size_t s = 0; s < H.H_X.size(); ++s)
        for (size_t k = 0; k < H.H_X[s].size(); ++k)
            rep.add("H_X" + std::to_string(s + 1) + "_" + std::to_string(k + 1), rel(R.H_X[s][k], H.H_X[s][k]), tol);
    return rep;
}

CheckReport check_reduction_paths(const ConnectionConfig& config, const DarbouxState& state, double tol) {
    CheckReport rep{"reduction_paths", {}};
    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    const auto toeplitz = reduced_hamiltonians(config, state, H);
    const TimeChart chart = forward_time_map(config);
    for (const auto& id : chart.iso_ids()) {
        const DeformationVector a = dual_derivative_coefficients(chart, id);
        const cplx full = hamiltonian_value(config, state, solve_coefficients(config, state, a), H);
        const cplx direct = reduced_hamiltonian_direct(config, state, a, H);
        rep.add(id.name() + ":direct", rel(direct, full), tol);
        rep.add(id.name() + ":toeplitz", rel(toeplitz.at(id), full), tol);
    }
    return rep;
}

CheckReport check_chart_round_trip(const ConnectionConfig& config, double tol) {
    CheckReport rep{"chart_round_trip", {}};
    const TimeChart chart = forward_time_map(config);
    const ConnectionConfig back = inverse_time_map(chart, config.hbar);
    double scale = 1.0;
    for (int i = 0; i < 2; ++i)
        for (cplx t : config.t_inf[i]) scale = std::max(scale, std::abs(t));
    rep.add("inverse_of_forward", config_distance(config, back) / scale, tol);
    const TimeChart again = forward_time_map(back, chart.branch);
    const cvec v1 = chart.iso_values(), v2 = again.iso_values();
    double e = std::abs(chart.T1 - again.T1) + std::abs(chart.T2 - again.T2);
    for (size_t i = 0; i < v1.size(); ++i) e = std::max(e, rel(v2[i], v1[i]));
    rep.add("forward_of_inverse", e, tol);
    return rep;
}

CheckReport check_det_V(const ConnectionConfig& config, const DarbouxState& state, double tol) {
    CheckReport rep{"det_V", {}};
    if (config.r_inf() < 3) throw ValidationError("the node matrix is square only for r_inf >= 3");
    const cplx lu = determinant(assemble_V(config, state));
    const cplx closed = V_determinant_closed_form(config, state);
    rep.add("determinant", std::abs(lu - closed) / std::abs(closed), tol);
    return rep;
}

SuiteRng suite_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return SuiteRng(seq);
}

namespace {

double uniform(SuiteRng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(SuiteRng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
cplx unit_box(SuiteRng& rng) { return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}; }
cplx leading_gap(SuiteRng& rng) { return std::polar(uniform(rng, 0.7, 1.5), uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

void fill_orders(SuiteRng& rng, PoleStructure& p, int n) {
    p.r.clear();
    for (int s = 0; s < n; ++s) p.r.push_back(uniform_int(rng, 1, 3));
}

// Finite poles among the nodes so that the node rows stay well conditioned; a single pole sits
// near the origin, inside the node annulus.
cplx generic_pole(SuiteRng& rng, int s, int n) {
    if (n == 1) return 0.2 * unit_box(rng);
    return std::polar(uniform(rng, 0.9, 1.4), 2.0 * std::numbers::pi * s / n + uniform(rng, -0.3, 0.3));
}
// Isomonodromic positions of canonical charts, away from 0 and 1.
cplx canonical_pole(int s) { return std::polar(1.6 + 0.3 * s, 1.9 + 1.1 * s); }

}  // namespace

PoleStructure sample_structure(SuiteRng& rng, ChartCase chart_case, int max_genus) {
    for (;;) {
        PoleStructure p;
        switch (chart_case) {
            case ChartCase::r_inf_at_least_3:
                p.r_inf = uniform_int(rng, 3, 7);
                fill_orders(rng, p, uniform_int(rng, 0, 2));
                break;
            case ChartCase::r_inf_2:
                p.r_inf = 2;
                fill_orders(rng, p, uniform_int(rng, 1, 3));
                break;
            case ChartCase::r_inf_1_multi:
                p.r_inf = 1;
                fill_orders(rng, p, uniform_int(rng, 2, 4));
                break;
            case ChartCase::r_inf_1_single:
                p.r_inf = 1;
                p.r = {uniform_int(rng, 3, max_genus + 2)};
                break;
        }
        const int g = genus(p);
        if (g >= 1 && g <= max_genus) return p;
    }
}

ConnectionConfig sample_config(SuiteRng& rng, const PoleStructure& orders) {
    ConnectionConfig c;
    c.structure = orders;
    c.structure.X.clear();
    const int r = orders.r_inf;
    for (int i = 0; i < 2; ++i) {
        c.t_inf[i].resize(r);
        for (auto& x : c.t_inf[i]) x = unit_box(rng);
    }
    c.t_inf[1][r - 1] = c.t_inf[0][r - 1] - leading_gap(rng);
    cplx sum = c.t_inf[0][0] + c.t_inf[1][0];
    for (int s = 0; s < orders.n(); ++s) {
        c.structure.X.push_back(generic_pole(rng, s, orders.n()));
        const int rs = orders.r[s];
        SheetPair sp;
        for (int i = 0; i < 2; ++i) {
            sp[i].resize(rs);
            for (auto& x : sp[i]) x = unit_box(rng);
        }
        sp[1][rs - 1] = sp[0][rs - 1] - leading_gap(rng);
        sum += sp[0][0] + sp[1][0];
        c.t_X.push_back(sp);
    }
    c.t_inf[1][0] -= sum;
    c.hbar = std::polar(uniform(rng, 0.5, 1.2), uniform(rng, -0.5, 0.5));
    return c;
}

ConnectionConfig sample_canonical_config(SuiteRng& rng, const PoleStructure& orders) {
    PoleStructure shape = orders;
    shape.X.assign(orders.n(), 0.0);
    TimeChart probe;
    probe.structure = shape;
    probe.chart_case = chart_case_of(shape);
    probe.tau_inf.assign(std::max(shape.r_inf - 2, 1), 0.0);
    for (int s = 0; s < shape.n(); ++s) probe.tau_X.push_back(cvec(shape.r[s], 0.0));
    probe.X_tilde.assign(shape.n(), 0.0);
    cvec iso;
    for (const auto& id : probe.iso_ids())
        iso.push_back(id.kind == IsoTimeId::Kind::position ? canonical_pole(id.s) : unit_box(rng));
    cvec theta_X;
    for (int s = 0; s < shape.n(); ++s) theta_X.push_back(unit_box(rng));
    const cplx hbar = std::polar(uniform(rng, 0.5, 1.2), uniform(rng, -0.5, 0.5));
    return specialize_canonical(shape, iso, unit_box(rng), theta_X, hbar);
}

DarbouxState sample_state(SuiteRng& rng, const ConnectionConfig& config) {
    const int g = config.genus();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        DarbouxState st;
        bool ok = true;
        for (int j = 0; j < g && ok; ++j) {
            const cplx q = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
            for (cplx other : st.q) ok = ok && std::abs(q - other) >= 0.3;
            for (cplx x : config.structure.X) ok = ok && std::abs(q - x) >= 0.3;
            st.q.push_back(q);
            st.p.push_back(unit_box(rng));
        }
        if (ok) return st;
    }
    throw ValidationError("could not place separated nodes");
}

DeformationVector sample_direction(SuiteRng& rng, const ConnectionConfig& config) {
    DeformationVector a = DeformationVector::zero(config);
    for (int i = 0; i < 2; ++i)
        for (int k = 1; k < config.r_inf(); ++k) a.a_inf[i][k] = unit_box(rng);
    for (int s = 0; s < config.n(); ++s) {
        for (int i = 0; i < 2; ++i)
            for (int k = 1; k < config.structure.r[s]; ++k) a.a_X[s][i][k] = unit_box(rng);
        a.a_pos[s] = unit_box(rng);
    }
    return a;
}

cvec sample_lambdas(SuiteRng& rng, const ConnectionConfig& config, const DarbouxState& state, int count) {
    cvec out;
    while ((int)out.size() < count) {
        const cplx lam = std::polar(uniform(rng, 0.2, 3.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
        bool ok = true;
        for (cplx x : config.structure.X) ok = ok && std::abs(lam - x) >= 0.3;
        for (cplx q : state.q) ok = ok && std::abs(lam - q) >= 0.3;
        if (ok) out.push_back(lam);
    }
    return out;
}

bool ConfigResult::passed() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
    return static_cast<int>(std::count_if(configs.begin(), configs.end(), [](const ConfigResult& c) { return !c.passed(); }));
}

namespace {

constexpr ChartCase kCases[] = {ChartCase::r_inf_at_least_3, ChartCase::r_inf_2, ChartCase::r_inf_1_multi,
                                ChartCase::r_inf_1_single};

}  // namespace

std::vector<CheckReport> check_configuration(const ConnectionConfig& config, const DarbouxState& state,
                                             const DeformationVector& alpha, const cvec& lambdas,
                                             const SuiteOptions& opt) {
    const CheckTolerances& tol = opt.tol;
    std::vector<CheckReport> checks;
    checks.push_back(check_hamiltonianity(config, state, alpha, opt.fd_eps, tol.hamiltonianity));
    checks.push_back(check_zero_curvature(config, state, alpha, lambdas, opt.fd_eps, tol.zero_curvature));
    checks.push_back(check_trivial_identities(config, state, opt.fd_eps, tol.trivial_field, tol.trivial_times));
    checks.push_back(check_trivial_invariance(config, state, opt.invariance_span, tol.trivial_invariance));
    checks.push_back(check_chart_round_trip(config, tol.round_trip));
    if (config.r_inf() >= 3) checks.push_back(check_det_V(config, state, tol.det_V));
    return checks;
}

namespace {

ConfigResult run_one(const SuiteOptions& opt, int index) {
    ConfigResult res;
    res.index = index;
    SuiteRng rng = suite_rng(opt.seed, static_cast<std::uint64_t>(index));
    const PoleStructure orders = opt.structures.empty()
                                     ? sample_structure(rng, kCases[index % 4], opt.max_genus)
                                     : opt.structures[static_cast<size_t>(index) % opt.structures.size()];
    res.structure = orders;
    res.chart_case = chart_case_of(orders);
    res.genus = genus(orders);
    const CheckTolerances& tol = opt.tol;
    try {
        const ConnectionConfig config = sample_config(rng, orders);
        const ValidationReport valid = validate(config);
        if (!valid.ok) throw ValidationError(valid.failures.front());
        const DarbouxState state = sample_state(rng, config);
        const DeformationVector alpha = sample_direction(rng, config);
        const cvec lambdas = sample_lambdas(rng, config, state, opt.lambdas);
        res.checks = check_configuration(config, state, alpha, lambdas, opt);

        const ConnectionConfig canonical = sample_canonical_config(rng, orders);
        const DarbouxState cstate = sample_state(rng, canonical);
        res.checks.push_back(check_residue_crosscheck(canonical, cstate, tol.residue));
        res.checks.push_back(check_reduction_paths(canonical, cstate, tol.reduction));
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& options) {
    SuiteReport report;
    report.seed = options.seed;
    report.configs.resize(static_cast<size_t>(std::max(0, options.count)));
    const auto start = std::chrono::steady_clock::now();
    const int count = options.count;
    if (options.parallel) {
#ifdef ISOMONO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < count; ++i) report.configs[static_cast<size_t>(i)] = run_one(options, i);
    } else {
        for (int i = 0; i < count; ++i) report.configs[static_cast<size_t>(i)] = run_one(options, i);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

nlohmann::json to_json(const CheckReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& i : report.items) {
        // JSON has no NaN or infinity; they are written as null residuals
        nlohmann::json r = std::isfinite(i.residual) ? nlohmann::json(i.residual) : nlohmann::json(nullptr);
        items.push_back({{"name", i.name}, {"residual", r}, {"tolerance", i.tolerance}, {"pass", i.pass}});
    }
    return {{"name", report.name}, {"pass", report.passed()}, {"items", items}};
}

nlohmann::json to_json(const SuiteReport& report) {
    nlohmann::json configs = nlohmann::json::array();
    for (const auto& c : report.configs) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& ch : c.checks) checks.push_back(to_json(ch));
        nlohmann::json entry = {{"index", c.index},
                                {"case", to_string(c.chart_case)},
                                {"r_inf", c.structure.r_inf},
                                {"orders", c.structure.r},
                                {"genus", c.genus},
                                {"pass", c.passed()},
                                {"checks", checks}};
        if (!c.error.empty()) entry["error"] = c.error;
        configs.push_back(entry);
    }
    return {{"schema", 1},
            {"seed", report.seed},
            {"configs", configs},
            {"summary", {{"count", report.configs.size()}, {"failures", report.failures()}, {"pass", report.passed()}}}};
}

}  // namespace isomono
