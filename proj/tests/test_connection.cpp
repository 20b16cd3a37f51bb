#include "isomono/presets.hpp"

#include "test_helpers.hpp"

using namespace isomono;
using isomono::test::make_structure;
using isomono::test::Sampler;

namespace {

ConnectionConfig zero_config(const PoleStructure& orders) {
    ConnectionConfig c;
    c.structure = orders;
    c.structure.X.clear();
    for (int s = 0; s < orders.n(); ++s) c.structure.X.push_back(static_cast<double>(s));
    c.t_inf = {cvec(orders.r_inf, 0.0), cvec(orders.r_inf, 0.0)};
    for (int rs : orders.r) c.t_X.push_back({cvec(rs, 0.0), cvec(rs, 0.0)});
    return c;
}

bool has_failure(const ValidationReport& rep, const std::string& needle) {
    for (const auto& f : rep.failures)
        if (f.find(needle) != std::string::npos) return true;
    return false;
}

double max_coeff_gap(const RationalFunction& a, const RationalFunction& b, const cvec& probes) {
    double m = 0.0;
    for (cplx lam : probes) m = std::max(m, std::abs(a.evaluate(lam) - b.evaluate(lam)));
    return m;
}

}  // namespace

TEST_CASE("genus counts r_inf - 3 plus the finite orders") {
    CHECK(genus(make_structure(4, {})) == 1);
    CHECK(genus(make_structure(1, {1, 1, 1})) == 1);
    CHECK(genus(make_structure(5, {})) == 2);
    CHECK(genus(make_structure(2, {2})) == 1);
    CHECK(genus(make_structure(3, {1, 2, 3})) == 6);
}

TEST_CASE("antisymmetric monodromies at infinity validate") {
    ConnectionConfig c = zero_config(make_structure(4, {}));
    c.t_inf[0] = {1.0, 0.0, 0.0, 1.0};
    c.t_inf[1] = {-1.0, 0.0, 0.0, -1.0};
    const ValidationReport rep = validate(c);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
}

TEST_CASE("coincident finite poles are reported") {
    ConnectionConfig c = zero_config(make_structure(1, {1, 1, 1}));
    c.structure.X = {0.0, 0.0, 1.0};
    for (auto& pair : c.t_X) {
        pair[0] = {0.1};
        pair[1] = {-0.1};
    }
    c.t_inf[0] = {0.2};
    c.t_inf[1] = {-0.2};
    const ValidationReport rep = validate(c);
    CHECK_FALSE(rep.ok);
    CHECK(has_failure(rep, "poles not distinct"));
}

TEST_CASE("equal leading times at infinity are reported as ramified") {
    ConnectionConfig c = zero_config(make_structure(4, {}));
    c.t_inf[0][3] = 1.0;
    c.t_inf[1][3] = 1.0;
    const ValidationReport rep = validate(c);
    CHECK_FALSE(rep.ok);
    CHECK(has_failure(rep, "ramified pole at infinity"));
}

TEST_CASE("residue-sum violation is a failure unless downgraded") {
    ConnectionConfig c = zero_config(make_structure(4, {}));
    c.t_inf[0] = {0.3, 0.0, 0.0, 1.0};
    c.t_inf[1] = {0.0, 0.0, 0.0, -1.0};
    ValidationReport rep = validate(c);
    CHECK(has_failure(rep, "SumResidues"));
    c.enforce_residue_sum = false;
    rep = validate(c);
    CHECK(rep.ok);
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("SumResidues") != std::string::npos);
}

TEST_CASE("non-positive genus is rejected") {
    ConnectionConfig c = zero_config(make_structure(2, {}));
    c.t_inf[0][1] = 1.0;
    c.t_inf[1][1] = -1.0;
    CHECK(has_failure(validate(c), "genus not positive"));
}

TEST_CASE("state validation catches colliding nodes") {
    const ConnectionConfig c = painleve_preset(PainleveId::P6, {0.1, {0.2, 0.3, 0.1}, 1.0}, {cplx(2.5, 0.5)},
                                               {{0.4}, {0.1}}).config;
    CHECK(validate_state(c, {{0.4}, {0.1}}).ok);
    CHECK_FALSE(validate_state(c, {{1.0}, {0.1}}).ok);
    CHECK_FALSE(validate_state(c, {{0.4, 0.5}, {0.1, 0.1}}).ok);
    CHECK_THROWS_AS(require_valid(c, {{0.0}, {0.1}}), ValidationError);
}

TEST_CASE("P1 of canonical times vanishes") {
    for (auto id : {PainleveId::P2, PainleveId::P3, PainleveId::P5, PainleveId::P6, PainleveId::P2H2}) {
        PainleveParameters params{0.3, cvec(finite_pole_count(id), 0.2), 1.0};
        cvec times(iso_time_count(id), cplx(1.3, 0.2));
        DarbouxState st{cvec(id == PainleveId::P2H2 ? 2 : 1, 0.4), cvec(id == PainleveId::P2H2 ? 2 : 1, 0.1)};
        if (id == PainleveId::P2H2) st.q[1] = -0.4;
        const ConnectionConfig c = painleve_preset(id, params, times, st).config;
        const RationalFunction P1 = compute_P1(c);
        CHECK(P1.max_abs_coeff() == 0.0);
    }
}

TEST_CASE("P1 substitutes sheet sums") {
    ConnectionConfig c = zero_config(make_structure(2, {}));
    c.t_inf[0][1] = 2.0;
    c.t_inf[1][1] = 1.0;
    const RationalFunction P1 = compute_P1(c);
    CHECK(P1.poly_degree() == 0);
    CHECK(std::abs(P1.poly_coeff(0) + 3.0) < 1e-15);
    CHECK(compute_P1(zero_config(make_structure(3, {1, 2}))).max_abs_coeff() == 0.0);
}

TEST_CASE("P2 tilde of the Painleve 2 data") {
    const cplx theta(0.3, 0.1), t(1.4, -0.2);
    const ConnectionConfig c = specialize_canonical(make_structure(4, {}), {t}, theta, {});
    CHECK(std::abs(c.t_inf[0][1] - t / 2.0) < 1e-15);
    CHECK(std::abs(c.t_inf[0][0] - theta) < 1e-15);
    const RationalFunction P2 = compute_P2_tilde(c);
    RationalFunction expected({0.0, -2.0 * theta, -t, 0.0, -1.0});
    CHECK(max_coeff_gap(P2, expected, {0.3, cplx(1.0, 2.0), cplx(-2.0, 0.5), 5.0}) < 1e-12);
    CHECK(P2.poly_degree() == 4);
}

TEST_CASE("P2 tilde of the Painleve 3 data") {
    const cplx thX(0.25, -0.1), t(1.7, 0.4);
    const ConnectionConfig c = painleve_preset(PainleveId::P3, {0.3, {thX}, 1.0}, {t}, {{0.4}, {0.1}}).config;
    const RationalFunction P2 = compute_P2_tilde(c);
    RationalFunction expected = RationalFunction::constant(-1.0) + RationalFunction::pole(0.0, 3, -thX * t) +
                                RationalFunction::pole(0.0, 4, -t * t / 4.0);
    CHECK(max_coeff_gap(P2, expected, {0.3, cplx(1.0, 2.0), cplx(-2.0, 0.5), 5.0}) < 1e-12);
}

TEST_CASE("P2 tilde of all-zero times is zero") {
    const ConnectionConfig c = zero_config(make_structure(3, {2, 1}));
    CHECK(compute_P2_tilde(c).max_abs_coeff() == 0.0);
}

TEST_CASE("P2 tilde principal part has r_s terms led by the sheet product") {
    for (const auto& orders : isomono::test::representative_structures()) {
        const auto rc = isomono::test::random_case(orders, 7);
        const RationalFunction P2 = compute_P2_tilde(rc.config);
        for (int s = 0; s < rc.config.n(); ++s) {
            const int rs = orders.r[s];
            const PrincipalPart* part = P2.find_part(rc.config.structure.X[s]);
            REQUIRE(part != nullptr);
            CHECK(static_cast<int>(part->coeffs.size()) == 2 * rs);
            for (int j = 1; j <= rs; ++j) CHECK(part->coeffs[j - 1] == cplx(0.0));
            const cplx lead = rc.config.t_X[s][0][rs - 1] * rc.config.t_X[s][1][rs - 1];
            CHECK(std::abs(part->coeffs[2 * rs - 1] - lead) < 1e-12 * std::max(1.0, std::abs(lead)));
        }
    }
}

TEST_CASE("P1 and P2 tilde are symmetric under a sheet swap") {
    const cvec probes = {cplx(2.1, 0.3), cplx(-1.7, 1.9), cplx(0.1, -2.6)};
    for (const auto& orders : isomono::test::representative_structures()) {
        const auto rc = isomono::test::random_case(orders, 8);
        const ConnectionConfig swapped = swap_sheets(rc.config);
        CHECK(max_coeff_gap(compute_P1(rc.config), compute_P1(swapped), probes) < 1e-12);
        CHECK(max_coeff_gap(compute_P2_tilde(rc.config), compute_P2_tilde(swapped), probes) < 1e-10);
    }
}

TEST_CASE("P1 does not depend on hbar") {
    const auto rc = isomono::test::random_case(make_structure(3, {1, 2}), 9);
    ConnectionConfig other = rc.config;
    other.hbar = cplx(3.0, -1.0);
    CHECK(max_coeff_gap(compute_P1(rc.config), compute_P1(other), {cplx(2.0, 1.0), cplx(-0.5, 2.2)}) == 0.0);
}

TEST_CASE("deformation dimension is 2g + 4 - n") {
    for (const auto& orders : isomono::test::representative_structures()) {
        const auto rc = isomono::test::random_case(orders, 10);
        const DeformationVector zero = DeformationVector::zero(rc.config);
        CHECK(zero.dimension() == 2 * rc.config.genus() + 4 - rc.config.n());
    }
}

TEST_CASE("advance_times moves times and positions linearly") {
    const auto rc = isomono::test::random_case(make_structure(3, {2}), 11);
    const ConnectionConfig moved = advance_times(rc.config, rc.alpha, cplx(0.5, 0.0));
    CHECK(std::abs(moved.t_inf[0][2] - rc.config.t_inf[0][2] - 0.5 * rc.alpha.a_inf[0][2]) < 1e-15);
    CHECK(std::abs(moved.t_X[0][1][1] - rc.config.t_X[0][1][1] - 0.5 * rc.alpha.a_X[0][1][1]) < 1e-15);
    CHECK(std::abs(moved.structure.X[0] - rc.config.structure.X[0] - 0.5 * rc.alpha.a_pos[0]) < 1e-15);
    CHECK(moved.t_inf[0][0] == rc.config.t_inf[0][0]);
}
