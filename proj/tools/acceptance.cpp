#include "isomono/presets.hpp"
#include "isomono/verification.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

using namespace isomono;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

void report(int criterion, const Outcome& o) {
    std::printf("criterion %d: %s  %s\n", criterion, o.pass ? "PASS" : "FAIL", o.detail.c_str());
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    cplx disc(double radius = 1.0) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return std::polar(radius * std::sqrt(u(rng_)), 6.283185307179586 * u(rng_));
    }

private:
    std::mt19937_64 rng_;
};

const std::vector<PainleveId> kSingleTime = {PainleveId::P2, PainleveId::P3, PainleveId::P4,
                                             PainleveId::P4_JM, PainleveId::P5, PainleveId::P6};

// Max over the interior of |hbar^2 q'' - rhs| / max(1, |rhs|), q'' by central differences.
double ode_residual(PainleveId id, const PainleveParameters& params, cplx t0, const DarbouxState& st) {
    const PainlevePreset pre = painleve_preset(id, params, {t0}, st);
    StepControl sc;
    sc.step = 1e-3;
    const Trajectory tr = integrate_flow(pre.schedule(), st, t0, t0 + 0.5, sc);
    if (!tr.completed) return std::numeric_limits<double>::infinity();
    const auto& pts = tr.points;
    double worst = 0.0;
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const double h = std::abs(pts[i + 1].time - pts[i].time);
        const cplx q = pts[i].state.q[0];
        const cplx d2 = (pts[i + 1].state.q[0] - 2.0 * q + pts[i - 1].state.q[0]) / (h * h);
        const cplx d1 = (pts[i + 1].state.q[0] - pts[i - 1].state.q[0]) / (2.0 * h);
        const cplx rhs = painleve_rhs_oracle(id, q, d1, pts[i].time, params);
        worst = std::max(worst, std::abs(params.hbar * params.hbar * d2 - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
}

Outcome painleve_recovery(std::uint64_t seed) {
    Outcome o;
    Sampler s(seed);
    double worst = 0.0, slowest = 0.0;
    for (PainleveId id : kSingleTime) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto start = Clock::now();
            PainleveParameters params;
            params.theta_inf = s.disc();
            for (int i = 0; i < finite_pole_count(id); ++i) params.theta_X.push_back(s.disc());
            params.hbar = cplx(1.0, 0.0) + s.disc(0.5);
            const cplx t = cplx(1.7, 0.4) + s.disc(0.6);
            const DarbouxState st{{cplx(0.7, 0.3) + s.disc(0.2)}, {s.disc()}};
            const PainlevePreset pre = painleve_preset(id, params, {t}, st);
            const EvolutionField f = evolution_field(pre.config, st, pre.directions[0]);
            const EvolutionField d = painleve_displayed_field(id, params, {t}, st);
            worst = std::max({worst, std::abs(f.dq[0] - d.dq[0]) / std::abs(d.dq[0]),
                              std::abs(f.dp[0] - d.dp[0]) / std::abs(d.dp[0])});
            slowest = std::max(slowest, seconds_since(start));
        }
    }
    o.pass = worst < 1e-12 && slowest < 0.1;
    o.detail = "field max rel " + fmt_double(worst) + ", slowest " + fmt_double(slowest) + " s";

    const DarbouxState st{{cplx(0.4, 0.2)}, {cplx(0.1, -0.05)}};
    for (PainleveId id : {PainleveId::P2, PainleveId::P6}) {
        PainleveParameters params;
        params.theta_inf = s.disc(0.6);
        for (int i = 0; i < finite_pole_count(id); ++i) params.theta_X.push_back(s.disc(0.6));
        params.hbar = cplx(1.0, 0.1);
        const cplx t0 = id == PainleveId::P6 ? cplx(2.5, 0.5) : cplx(0.9, 0.0);
        const auto start = Clock::now();
        const double r = ode_residual(id, params, t0, st);
        const double secs = seconds_since(start);
        o.pass = o.pass && r < 1e-6 && secs < 2.0;
        o.detail += std::string("; ") + to_string(id) + " ode " + fmt_double(r) + " in " + fmt_double(secs) + " s";
    }
    return o;
}

Outcome closed_form_coefficients() {
    const DarbouxState one{{cplx(0.6, 0.5)}, {cplx(0.2, -0.3)}};
    const DarbouxState two{{cplx(0.6, 0.5), cplx(-0.4, 0.3)}, {cplx(0.2, -0.3), cplx(0.1)}};
    const cplx q = one.q[0], t(1.3, 0.4), q1 = two.q[0], q2 = two.q[1];
    const PainleveParameters p1{cplx(0.3, -0.1), {}, cplx(0.9, 0.2)};
    auto coeffs = [&](PainleveId id, const DarbouxState& st, int which = 0) {
        PainleveParameters params = p1;
        params.theta_X.assign(finite_pole_count(id), cplx(0.2, 0.15));
        cvec times = {t};
        if (id == PainleveId::P2H2) times.push_back(0.3);
        const PainlevePreset pre = painleve_preset(id, params, times, st);
        return solve_coefficients(pre.config, st, pre.directions[which]);
    };
    const auto P2 = coeffs(PainleveId::P2, one), P3 = coeffs(PainleveId::P3, one), P4 = coeffs(PainleveId::P4, one),
               P6 = coeffs(PainleveId::P6, one), H1 = coeffs(PainleveId::P2H2, two, 0),
               H2 = coeffs(PainleveId::P2H2, two, 1);
    const std::vector<std::pair<cplx, cplx>> pairs = {
        {P2.mu[0], 0.5},
        {P2.nu_infinity(1), 0.5},
        {P3.nu_X[0][1], -1.0 / t},
        {P3.mu[0], q * q / t},
        {P3.nu_zero(), q / t},
        {P4.mu[0], q - t},
        {P6.mu[0], q * (q - 1.0) * (q - t) / (t * (t - 1.0))},
        {H1.nu_infinity(1), 0.0},
        {H1.nu_infinity(2), 0.5},
        {H2.nu_infinity(1), 0.25},
        {H2.nu_infinity(2), 0.0},
        {H1.mu[0], 1.0 / (2.0 * (q1 - q2))},
        {H1.mu[1], -1.0 / (2.0 * (q1 - q2))},
    };
    double worst = 0.0;
    for (const auto& [got, want] : pairs) worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    return {worst < 1e-12, std::to_string(pairs.size()) + " values, max rel " + fmt_double(worst)};
}

struct SuiteSummary {
    std::map<std::string, double> worst;
    std::map<std::string, int> failures;
    std::map<std::string, int> runs;
    int errors = 0;
    std::set<ChartCase> cases;
    int max_genus = 0;
    int max_r_inf = 0;
    double seconds = 0.0;
};

SuiteSummary summarize(const SuiteReport& rep) {
    SuiteSummary s;
    s.seconds = rep.seconds;
    for (const auto& c : rep.configs) {
        if (!c.error.empty()) {
            ++s.errors;
            std::printf("  config %d (%s) error: %s\n", c.index, to_string(c.chart_case), c.error.c_str());
        }
        s.cases.insert(c.chart_case);
        s.max_genus = std::max(s.max_genus, c.genus);
        s.max_r_inf = std::max(s.max_r_inf, c.structure.r_inf);
        for (const auto& ch : c.checks) {
            s.worst[ch.name] = std::max(s.worst[ch.name], ch.worst_residual());
            s.failures[ch.name] += ch.passed() ? 0 : 1;
            s.runs[ch.name] += 1;
        }
    }
    return s;
}

Outcome from_checks(const SuiteSummary& s, int expected_runs, const std::vector<std::string>& names) {
    Outcome o;
    o.pass = s.errors == 0;
    for (const auto& n : names) {
        const int runs = s.runs.count(n) ? s.runs.at(n) : 0;
        const int fails = s.failures.count(n) ? s.failures.at(n) : 0;
        o.pass = o.pass && runs == expected_runs && fails == 0;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += n + " " + std::to_string(runs - fails) + "/" + std::to_string(runs) + " worst " +
                    fmt_double(s.worst.count(n) ? s.worst.at(n) : 0.0);
    }
    return o;
}

// Explicit sweep over r_inf = 3..7 plus the other chart cases.
Outcome chart_round_trips(const SuiteSummary& s, std::uint64_t seed) {
    Outcome o = from_checks(s, 50, {"chart_round_trip"});
    std::vector<PoleStructure> sweep;
    for (int r = 3; r <= 7; ++r)
        for (const std::vector<int>& orders : {std::vector<int>{}, {1}, {2, 1}}) {
            PoleStructure p{r, orders, {}};
            if (genus(p) <= 6) sweep.push_back(p);
        }
    for (const std::vector<int>& orders : {std::vector<int>{1}, {2, 3}, {1, 1, 2}})
        sweep.push_back(PoleStructure{2, orders, {}});
    for (const std::vector<int>& orders : {std::vector<int>{1, 1, 1}, {2, 2}, {4}, {7}})
        sweep.push_back(PoleStructure{1, orders, {}});
    double worst = 0.0;
    int fails = 0, cases = 0;
    for (size_t i = 0; i < sweep.size(); ++i)
        for (std::uint64_t k = 0; k < 4; ++k) {
            SuiteRng rng = suite_rng(seed, 1000 + 10 * i + k);
            const CheckReport rep = check_chart_round_trip(sample_config(rng, sweep[i]));
            worst = std::max(worst, rep.worst_residual());
            fails += rep.passed() ? 0 : 1;
            ++cases;
        }
    o.pass = o.pass && fails == 0;
    o.detail += "; sweep r_inf 1..7 " + std::to_string(cases - fails) + "/" + std::to_string(cases) + " worst " +
                fmt_double(worst);
    return o;
}

Outcome det_V_sweep(const SuiteSummary& s, std::uint64_t seed) {
    Outcome o;
    o.pass = s.errors == 0 && s.failures.count("det_V") && s.failures.at("det_V") == 0;
    double worst = s.worst.count("det_V") ? s.worst.at("det_V") : 0.0;
    int fails = 0, cases = 0;
    for (int r = 3; r <= 9; ++r)
        for (const std::vector<int>& orders : {std::vector<int>{}, {1}, {1, 2}, {3}, {1, 1, 1}}) {
            PoleStructure p{r, orders, {}};
            if (genus(p) > 6) continue;
            for (std::uint64_t k = 0; k < 4; ++k) {
                SuiteRng rng = suite_rng(seed, 2000 + 100 * static_cast<std::uint64_t>(r) + 10 * orders.size() + k);
                const ConnectionConfig c = sample_config(rng, p);
                const CheckReport rep = check_det_V(c, sample_state(rng, c));
                worst = std::max(worst, rep.worst_residual());
                fails += rep.passed() ? 0 : 1;
                ++cases;
            }
        }
    o.pass = o.pass && fails == 0;
    o.detail = "suite " + std::to_string(s.runs.count("det_V") ? s.runs.at("det_V") : 0) + " configs, sweep " +
               std::to_string(cases - fails) + "/" + std::to_string(cases) + ", worst rel " + fmt_double(worst);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria 1-8"};
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed of the random corpus");
    CLI11_PARSE(app, argc, argv);

    std::vector<Outcome> outcomes(9);
    auto guarded = [&](int criterion, const std::function<Outcome()>& run) {
        try {
            outcomes[criterion] = run();
        } catch (const std::exception& e) {
            outcomes[criterion] = {false, std::string("threw: ") + e.what()};
        }
        report(criterion, outcomes[criterion]);
    };

    guarded(1, [&] { return painleve_recovery(seed); });
    guarded(2, closed_form_coefficients);

    SuiteOptions opt;
    opt.seed = seed;
    opt.count = 50;
    opt.max_genus = 6;
    opt.lambdas = 10;
    opt.fd_eps = 1e-6;
    const SuiteSummary s = summarize(run_suite(opt));
    const bool corpus = s.cases.size() == 4 && s.max_genus <= 6;
    guarded(3, [&] {
        Outcome o = from_checks(s, 50, {"hamiltonianity"});
        o.pass = o.pass && corpus && s.seconds < 30.0;
        o.detail += "; 4 chart cases " + std::string(corpus ? "covered" : "MISSING") + ", suite " +
                    fmt_double(s.seconds) + " s";
        return o;
    });
    guarded(4, [&] { return from_checks(s, 50, {"zero_curvature"}); });
    guarded(5, [&] { return from_checks(s, 50, {"trivial_identities", "trivial_invariance"}); });
    guarded(6, [&] { return from_checks(s, 50, {"reduction_paths", "residue_crosscheck"}); });
    guarded(7, [&] { return chart_round_trips(s, seed); });
    guarded(8, [&] { return det_V_sweep(s, seed); });

    bool all = true;
    for (int i = 1; i <= 8; ++i) all = all && outcomes[i].pass;
    return all ? 0 : 1;
}
