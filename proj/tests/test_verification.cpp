#include "test_helpers.hpp"

#include <set>

using namespace isomono;
using isomono::test::make_structure;

TEST_CASE("seeded suite passes and covers every chart case") {
    SuiteOptions opt;
    opt.seed = 0;
    opt.count = 20;
    const SuiteReport rep = run_suite(opt);
    REQUIRE(rep.configs.size() == 20);
    CHECK(rep.passed());
    CHECK(rep.failures() == 0);
    int per_case[4] = {0, 0, 0, 0};
    for (const auto& c : rep.configs) {
        CHECK_MESSAGE(c.error.empty(), c.error);
        CHECK(c.genus >= 1);
        CHECK(c.genus <= 6);
        ++per_case[static_cast<int>(c.chart_case)];
        for (const auto& ch : c.checks) CHECK_MESSAGE(ch.passed(), ch.name, " worst ", ch.worst_residual());
    }
    for (int n : per_case) CHECK(n == 5);
}

TEST_CASE("P2 hierarchy slice") {
    SuiteOptions opt;
    opt.seed = 3;
    opt.count = 6;
    opt.structures = {make_structure(4, {}), make_structure(5, {}), make_structure(6, {})};
    const SuiteReport rep = run_suite(opt);
    CHECK(rep.passed());
    for (size_t i = 0; i < rep.configs.size(); ++i) {
        CHECK(rep.configs[i].structure.r_inf == 4 + static_cast<int>(i % 3));
        CHECK(rep.configs[i].structure.n() == 0);
        CHECK(rep.configs[i].genus == static_cast<int>(i % 3) + 1);
    }
}

TEST_CASE("an unreachable tolerance is reported, not thrown") {
    SuiteOptions opt;
    opt.seed = 1;
    opt.count = 4;
    opt.tol = CheckTolerances::uniform(1e-15);
    SuiteReport rep;
    CHECK_NOTHROW(rep = run_suite(opt));
    CHECK_FALSE(rep.passed());
    CHECK(rep.failures() > 0);
    const nlohmann::json j = to_json(rep);
    CHECK(j["summary"]["pass"] == false);
    CHECK(j["summary"]["failures"].get<int>() == rep.failures());
}

TEST_CASE("perturbed isospectral coefficients fail the gradient check") {
    for (const auto& orders : isomono::test::representative_structures()) {
        const auto rc = isomono::test::random_case(orders, 91);
        CHECK(check_hamiltonianity(rc.config, rc.state, rc.alpha).passed());
        const CheckReport bad = check_hamiltonianity(rc.config, rc.state, rc.alpha, 1e-6, 1e-6, 1e-3);
        if (orders.r_inf == 4 && orders.n() == 0) {
            // The only coefficient is H_{inf,0}, which the field does not depend on.
            CHECK(bad.passed());
            continue;
        }
        CHECK_FALSE(bad.passed());
    }
    const auto p2 = isomono::test::random_case(make_structure(4, {}), 91);
    IsospectralHamiltonians H = solve_isospectral_H(p2.config, p2.state);
    const DeformationCoefficients co = solve_coefficients(p2.config, p2.state, p2.alpha);
    const EvolutionField f = evolution_field(p2.config, p2.state, co, H);
    H.H_inf[0] += 1e-3;
    const EvolutionField g = evolution_field(p2.config, p2.state, co, H);
    CHECK(std::abs(f.dq[0] - g.dq[0]) == 0.0);
    CHECK(std::abs(f.dp[0] - g.dp[0]) < 1e-15);
}

TEST_CASE("zero deformation has zero curvature residual") {
    const auto rc = isomono::test::random_case(make_structure(3, {2}), 92);
    SuiteRng rng = suite_rng(92, 1);
    const cvec lambdas = sample_lambdas(rng, rc.config, rc.state, 10);
    const CheckReport rep = check_zero_curvature(rc.config, rc.state, DeformationVector::zero(rc.config), lambdas);
    CHECK(rep.passed());
    CHECK(rep.worst_residual() == 0.0);
}

TEST_CASE("sampled spectral points avoid the poles and the apparent singularities") {
    for (const auto& orders : isomono::test::representative_structures()) {
        const auto rc = isomono::test::random_case(orders, 93);
        SuiteRng rng = suite_rng(93, 2);
        const cvec lambdas = sample_lambdas(rng, rc.config, rc.state, 10);
        CHECK(lambdas.size() == 10);
        for (cplx l : lambdas) {
            for (cplx x : rc.config.structure.X) CHECK(std::abs(l - x) > 1e-3);
            for (cplx q : rc.state.q) CHECK(std::abs(l - q) > 1e-3);
        }
    }
}

TEST_CASE("det V check requires a square node matrix") {
    const auto rc = isomono::test::random_case(make_structure(2, {2}), 94);
    CHECK_THROWS_AS(check_det_V(rc.config, rc.state), ValidationError);
    const auto ok = isomono::test::random_case(make_structure(5, {1}), 94);
    CHECK(check_det_V(ok.config, ok.state).passed());
}

TEST_CASE("serial and parallel suites produce identical reports") {
    SuiteOptions opt;
    opt.seed = 7;
    opt.count = 8;
    opt.parallel = true;
    const std::string a = to_json(run_suite(opt)).dump();
    opt.parallel = false;
    const std::string b = to_json(run_suite(opt)).dump();
    CHECK(a == b);
    opt.seed = 8;
    CHECK(to_json(run_suite(opt)).dump() != b);
}

TEST_CASE("report JSON layout") {
    SuiteOptions opt;
    opt.seed = 2;
    opt.count = 4;
    const nlohmann::json j = to_json(run_suite(opt));
    CHECK(j["schema"] == 1);
    CHECK(j["seed"] == 2);
    REQUIRE(j["configs"].size() == 4);
    for (const auto& c : j["configs"]) {
        for (const char* key : {"index", "case", "r_inf", "orders", "genus", "pass", "checks"}) CHECK(c.contains(key));
        for (const auto& ch : c["checks"]) {
            CHECK(ch.contains("name"));
            CHECK(ch.contains("pass"));
            for (const auto& item : ch["items"])
                for (const char* key : {"name", "residual", "tolerance", "pass"}) CHECK(item.contains(key));
        }
    }
    CHECK(j["summary"]["count"] == 4);
}

TEST_CASE("check names cover the verification corpus") {
    SuiteOptions opt;
    opt.seed = 4;
    opt.count = 4;
    const SuiteReport rep = run_suite(opt);
    for (const auto& c : rep.configs) {
        std::set<std::string> names;
        for (const auto& ch : c.checks) names.insert(ch.name);
        for (const char* n : {"hamiltonianity", "zero_curvature", "trivial_identities", "trivial_invariance",
                              "chart_round_trip", "residue_crosscheck", "reduction_paths"})
            CHECK_MESSAGE(names.count(n) == 1, n);
        CHECK(names.count("det_V") == (c.structure.r_inf >= 3 ? 1u : 0u));
    }
}
