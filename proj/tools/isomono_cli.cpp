#include "isomono/config_io.hpp"
#include "isomono/presets.hpp"
#include "isomono/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace isomono;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "re" or "re,im"
cplx parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {re, 0.0};
        }
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        return {re, im};
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse complex number '" + text + "' (expected re or re,im)");
    }
}

cvec parse_complex_list(const std::vector<std::string>& items) {
    cvec out;
    for (const auto& s : items) out.push_back(parse_complex(s));
    return out;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("ISOMONO_SEED");
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::logic_error&) {
        throw UsageError(std::string("ISOMONO_SEED is not an unsigned integer: '") + env + "'");
    }
}

json matrix_to_json(const Mat2& m) {
    return json::array({json::array({complex_to_json(m.a11), complex_to_json(m.a12)}),
                        json::array({complex_to_json(m.a21), complex_to_json(m.a22)})});
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << doc.dump(2) << '\n';
}

const DarbouxState& require_state(const ParsedInput& in, const std::string& cmd) {
    if (!in.state) throw SchemaError("/state", "required by '" + cmd + "'");
    return *in.state;
}

const DeformationVector& require_deformation(const ParsedInput& in, const std::string& cmd) {
    if (!in.deformation) throw SchemaError("/deformation", "required by '" + cmd + "'");
    return *in.deformation;
}

struct GlobalOptions {
    Tolerances tol;
};

struct BuildOptions {
    std::string config;
    std::vector<std::string> lambdas;
    std::string out;
};

int run_build(const GlobalOptions& g, const BuildOptions& o) {
    const ParsedInput in = parse_config(o.config, g.tol);
    const DarbouxState& state = require_state(in, "build");
    const ConnectionConfig& config = in.config;
    cvec grid = parse_complex_list(o.lambdas);
    if (grid.empty())
        for (int k = 0; k < 8; ++k) grid.push_back(std::polar(2.7, (2 * k + 1) * 3.14159265358979323846 / 8));

    const IsospectralHamiltonians H = solve_isospectral_H(config, state);
    const LaxMatrix companion = build_L_companion(config, state, H);
    const std::vector<std::pair<const char*, LaxMatrix>> gauges = {{"L", companion},
                                                                   {"L_check", build_L_check(config, state, H)},
                                                                   {"L_tilde", build_L_tilde(config, state, H)},
                                                                   {"L_c", build_L_c(config, state, H)}};
    json out = {{"schema", kConfigSchemaVersion}, {"lambda", complex_list_to_json(grid)}};
    for (const auto& [name, L] : gauges) {
        json values = json::array();
        for (cplx lam : grid) values.push_back(matrix_to_json(L.evaluate(lam, g.tol.sep)));
        out[name] = values;
    }
    if (in.deformation) {
        const DeformationCoefficients coeffs = solve_coefficients(config, state, *in.deformation);
        const LaxMatrix A = build_A_companion(config, state, coeffs, H, companion);
        json values = json::array();
        for (cplx lam : grid) values.push_back(matrix_to_json(A.evaluate(lam, g.tol.sep)));
        out["A"] = values;
        out["hamiltonian"] = complex_to_json(hamiltonian_value(config, state, coeffs, H));
    }
    emit(out, o.out);
    return kExitOk;
}

struct EvolveOptions {
    std::string config;
    std::vector<double> span;
    double step = 1e-3;
    std::string method = "rk4";
    double tolerance = 1e-9;
    std::string out;
};

int run_evolve(const GlobalOptions& g, const EvolveOptions& o) {
    const ParsedInput in = parse_config(o.config, g.tol);
    const DarbouxState& state = require_state(in, "evolve");
    const DeformationVector& alpha = require_deformation(in, "evolve");
    if (o.span.size() != 2) throw UsageError("--span expects two values: begin,end");
    if (!(o.step > 0.0)) throw UsageError("--step must be positive");

    StepControl control;
    control.method = o.method == "rk45" ? Integrator::rk45 : Integrator::rk4;
    control.step = o.step;
    control.tolerance = o.tolerance;
    control.tol_sep = g.tol.sep;
    const FlowSchedule schedule = linear_schedule(in.config, alpha, o.span[0]);
    const Trajectory traj = integrate_flow(schedule, state, o.span[0], o.span[1], control);

    if (o.out.empty()) {
        write_trajectory_csv(std::cout, traj);
    } else {
        std::ofstream f(o.out);
        if (!f) throw Error("cannot write '" + o.out + "'");
        write_trajectory_csv(f, traj);
    }
    if (!traj.completed) {
        std::cerr << "error: integration stopped: " << traj.stop_reason << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

struct CheckOptions {
    std::string config;
    std::uint64_t seed = 0;
    int cases = 20;
    int max_genus = 6;
    int lambdas = 10;
    double tol = -1.0;
    bool serial = false;
    std::string out;
};

int run_check(const GlobalOptions& g, const CheckOptions& o) {
    SuiteOptions suite;
    suite.seed = o.seed;
    suite.count = o.cases;
    suite.max_genus = o.max_genus;
    suite.lambdas = o.lambdas;
    suite.fd_eps = g.tol.fd_eps;
    suite.parallel = !o.serial;
    if (o.tol > 0.0) suite.tol = CheckTolerances::uniform(o.tol);
    if (o.cases < 0) throw UsageError("--cases must be non-negative");
    if (o.max_genus < 1) throw UsageError("--max-genus must be at least 1");

    if (o.config.empty()) {
        const SuiteReport report = run_suite(suite);
        emit(to_json(report), o.out);
        return report.passed() ? kExitOk : kExitFailure;
    }

    const ParsedInput in = parse_config(o.config, g.tol);
    const DarbouxState& state = require_state(in, "check");
    const DeformationVector& alpha = require_deformation(in, "check");
    SuiteRng rng = suite_rng(o.seed, 0);
    const cvec lambdas = sample_lambdas(rng, in.config, state, o.lambdas);
    std::vector<CheckReport> checks = check_configuration(in.config, state, alpha, lambdas, suite);
    if (is_canonical(in.config)) {
        checks.push_back(check_residue_crosscheck(in.config, state, suite.tol.residue));
        checks.push_back(check_reduction_paths(in.config, state, suite.tol.reduction));
    }
    bool pass = true;
    json list = json::array();
    for (const auto& c : checks) {
        pass = pass && c.passed();
        list.push_back(to_json(c));
    }
    emit({{"schema", kConfigSchemaVersion}, {"seed", o.seed}, {"checks", list}, {"pass", pass}}, o.out);
    return pass ? kExitOk : kExitFailure;
}

struct PresetOptions {
    std::string id;
    std::string theta = "0";
    std::vector<std::string> theta_x;
    std::string hbar = "1";
    std::vector<std::string> times;
    std::vector<std::string> q;
    std::vector<std::string> p;
    int which = 0;
    std::string out;
};

int run_preset(const GlobalOptions&, const PresetOptions& o) {
    PainleveId id;
    try {
        id = painleve_id_from_string(o.id);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    PainleveParameters params;
    params.theta_inf = parse_complex(o.theta);
    params.hbar = parse_complex(o.hbar);
    params.theta_X = parse_complex_list(o.theta_x);
    if (params.theta_X.empty()) params.theta_X.assign(static_cast<size_t>(finite_pole_count(id)), 0.2);

    cvec times = parse_complex_list(o.times);
    if (times.empty()) {
        if (id == PainleveId::P6) times = {cplx(2.5, 0.5)};
        else if (id == PainleveId::P2H2) times = {0.9, 0.3};
        else times = {0.9};
    }
    const int g = id == PainleveId::P2H2 ? 2 : 1;
    DarbouxState state;
    state.q = parse_complex_list(o.q);
    state.p = parse_complex_list(o.p);
    for (int j = static_cast<int>(state.q.size()); j < g; ++j) state.q.push_back(cplx(0.4 + 0.3 * j, 0.2));
    for (int j = static_cast<int>(state.p.size()); j < g; ++j) state.p.push_back(0.1);

    const PainlevePreset preset = painleve_preset(id, params, times, state);
    if (o.which < 0 || o.which >= static_cast<int>(preset.directions.size()))
        throw UsageError("--which must be below " + std::to_string(preset.directions.size()));
    json doc = config_to_json(preset.config, &preset.state, &preset.directions[static_cast<size_t>(o.which)]);
    doc["preset"] = {{"id", to_string(id)}, {"iso_times", complex_list_to_json(times)}, {"which", o.which}};
    emit(doc, o.out);
    return kExitOk;
}

struct SpectralOptions {
    std::string config;
    std::string out;
};

int run_spectral(const GlobalOptions& g, const SpectralOptions& o) {
    const ParsedInput in = parse_config(o.config, g.tol);
    const DarbouxState& state = require_state(in, "spectral");
    const auto [P1, P2] = classical_spectral_curve(in.config, state);
    emit({{"schema", kConfigSchemaVersion},
          {"genus", in.config.genus()},
          {"P1", rational_to_json(P1)},
          {"P2", rational_to_json(P2)}},
         o.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isomonodromic deformations of 2x2 meromorphic connections"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--tol-sep", global.tol.sep, "Separation tolerance for poles, nodes and leading times");
    app.add_option("--tol-res", global.tol.res, "Residue-sum tolerance");
    app.add_option("--fd-eps", global.tol.fd_eps, "Finite-difference step");

    BuildOptions build;
    auto* build_cmd = app.add_subcommand("build", "Evaluate L in every gauge and A on a lambda grid (JSON)");
    build_cmd->add_option("--config", build.config, "Config file")->required();
    build_cmd->add_option("--lambda", build.lambdas, "Grid point re,im (repeatable)");
    build_cmd->add_option("-o,--out", build.out, "Output file (default stdout)");

    EvolveOptions evolve;
    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate the flow along the config's deformation (CSV)");
    evolve_cmd->add_option("--config", evolve.config, "Config file with state and deformation")->required();
    evolve_cmd->add_option("--span", evolve.span, "begin,end of the flow parameter")->required()->delimiter(',');
    evolve_cmd->add_option("--step", evolve.step, "Step size (initial step for rk45)");
    evolve_cmd->add_option("--method", evolve.method, "rk4 or rk45")->check(CLI::IsMember({"rk4", "rk45"}));
    evolve_cmd->add_option("--tol", evolve.tolerance, "rk45 local error tolerance");
    evolve_cmd->add_option("-o,--out", evolve.out, "Output file (default stdout)");

    CheckOptions check;
    check.seed = 0;
    auto* check_cmd = app.add_subcommand("check", "Run the verification suite (JSON, exit 1 on failure)");
    check_cmd->add_option("--config", check.config, "Check one config file instead of the random suite");
    auto* seed_opt = check_cmd->add_option("--seed", check.seed, "Suite seed (default $ISOMONO_SEED or 0)");
    check_cmd->add_option("--cases", check.cases, "Number of random configurations");
    check_cmd->add_option("--max-genus", check.max_genus, "Largest sampled genus");
    check_cmd->add_option("--lambdas", check.lambdas, "Zero-curvature sample points per configuration");
    check_cmd->add_option("--tol", check.tol, "Use one tolerance for every identity");
    check_cmd->add_flag("--serial", check.serial, "Run configurations serially");
    check_cmd->add_option("-o,--out", check.out, "Output file (default stdout)");

    PresetOptions preset;
    auto* preset_cmd = app.add_subcommand("preset", "Emit a ready config for a Painleve preset");
    preset_cmd->add_option("id", preset.id, "P2, P3, P4, P4_JM, P5, P6 or P2H2")->required();
    preset_cmd->add_option("--theta", preset.theta, "Monodromy exponent at infinity (re or re,im)");
    preset_cmd->add_option("--theta-x", preset.theta_x, "Monodromy exponent at each finite pole (repeatable)");
    preset_cmd->add_option("--hbar", preset.hbar, "hbar (re or re,im)");
    preset_cmd->add_option("--t", preset.times, "Isomonodromic time (repeatable)");
    preset_cmd->add_option("--q", preset.q, "Node q_j (repeatable)");
    preset_cmd->add_option("--p", preset.p, "Momentum p_j (repeatable)");
    preset_cmd->add_option("--which", preset.which, "Isomonodromic time carried as the deformation");
    preset_cmd->add_option("-o,--out", preset.out, "Output file (default stdout)");

    SpectralOptions spectral;
    auto* spectral_cmd = app.add_subcommand("spectral", "Emit the classical spectral curve coefficients (JSON)");
    spectral_cmd->add_option("--config", spectral.config, "Config file with state")->required();
    spectral_cmd->add_option("-o,--out", spectral.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check_cmd && seed_opt->count() == 0) check.seed = default_seed();
        if (*build_cmd) return run_build(global, build);
        if (*evolve_cmd) return run_evolve(global, evolve);
        if (*check_cmd) return run_check(global, check);
        if (*preset_cmd) return run_preset(global, preset);
        if (*spectral_cmd) return run_spectral(global, spectral);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
