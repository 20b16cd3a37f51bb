#include "isomono/presets.hpp"

#include "test_helpers.hpp"

using namespace isomono;

namespace {

PainleveParameters random_params(isomono::test::Sampler& s, PainleveId id) {
    PainleveParameters p;
    p.theta_inf = s.complex();
    p.theta_X = s.complex_list(finite_pole_count(id));
    p.hbar = cplx(1.0, 0.0) + s.complex(0.3);
    return p;
}

DarbouxState random_state(isomono::test::Sampler& s, PainleveId id) {
    DarbouxState st;
    const int g = id == PainleveId::P2H2 ? 2 : 1;
    for (int j = 0; j < g; ++j) {
        st.q.push_back(std::polar(0.7 + 0.6 * j, 0.5 + 1.3 * j) + s.complex(0.2));
        st.p.push_back(s.complex());
    }
    return st;
}

// Max over the trajectory interior of |hbar^2 q'' - rhs| / max(1, |rhs|), q'' by central differences.
double ode_residual(PainleveId id, const PainleveParameters& params, cplx t0, const DarbouxState& st) {
    const PainlevePreset pre = painleve_preset(id, params, {t0}, st);
    StepControl sc;
    sc.step = 1e-3;
    const Trajectory tr = integrate_flow(pre.schedule(), st, t0, t0 + 0.5, sc);
    REQUIRE(tr.completed);
    const auto& pts = tr.points;
    REQUIRE(pts.size() > 400);
    auto var = [&](size_t k) {
        const cplx q = pts[k].state.q[0];
        return id == PainleveId::P4 ? q - pts[k].time : q;
    };
    double worst = 0.0;
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const cplx t = pts[i].time;
        const double h = std::abs(pts[i + 1].time - t);
        const cplx d2 = (var(i + 1) - 2.0 * var(i) + var(i - 1)) / (h * h);
        const cplx d1 = (var(i + 1) - var(i - 1)) / (2.0 * h);
        const cplx rhs = painleve_rhs_oracle(id, var(i), d1, t, params);
        worst = std::max(worst, std::abs(params.hbar * params.hbar * d2 - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
}

}  // namespace

TEST_CASE("preset shapes") {
    CHECK(all_painleve_ids().size() == 7);
    for (PainleveId id : all_painleve_ids()) {
        CHECK(painleve_id_from_string(to_string(id)) == id);
        isomono::test::Sampler s(81);
        const PainleveParameters params = random_params(s, id);
        const DarbouxState st = random_state(s, id);
        cvec times(iso_time_count(id), cplx(1.7, 0.4));
        if (id == PainleveId::P2H2) times[1] = cplx(-0.3, 0.2);
        const PainlevePreset pre = painleve_preset(id, params, times, st);
        CHECK(validate(pre.config).ok);
        CHECK(pre.config.genus() == st.size());
        CHECK(static_cast<int>(pre.directions.size()) == iso_time_count(id));
        if (id != PainleveId::P4_JM) CHECK(is_canonical(pre.config));
    }
    CHECK_THROWS_AS(painleve_id_from_string("P7"), ValidationError);
}

TEST_CASE("evolution field equals the closed-form first-order systems") {
    isomono::test::Sampler s(82);
    for (PainleveId id : all_painleve_ids()) {
        for (int trial = 0; trial < 10; ++trial) {
            const PainleveParameters params = random_params(s, id);
            const DarbouxState st = random_state(s, id);
            cvec times;
            for (int i = 0; i < iso_time_count(id); ++i) times.push_back(cplx(1.7 + 0.3 * i, 0.4) + s.complex(0.6));
            const PainlevePreset pre = painleve_preset(id, params, times, st);
            for (int w = 0; w < iso_time_count(id); ++w) {
                const EvolutionField f = evolution_field(pre.config, st, pre.directions[w]);
                const EvolutionField d = painleve_displayed_field(id, params, times, st, w);
                for (int j = 0; j < st.size(); ++j) {
                    CHECK_MESSAGE(std::abs(f.dq[j] - d.dq[j]) <= 1e-12 * std::abs(d.dq[j]), to_string(id));
                    CHECK_MESSAGE(std::abs(f.dp[j] - d.dp[j]) <= 1e-12 * std::abs(d.dp[j]), to_string(id));
                }
            }
        }
    }
}

TEST_CASE("integrated trajectories satisfy the second-order Painleve equations") {
    isomono::test::Sampler s(83);
    const DarbouxState st{{cplx(0.4, 0.2)}, {cplx(0.1, -0.05)}};
    for (PainleveId id : {PainleveId::P2, PainleveId::P3, PainleveId::P4, PainleveId::P5, PainleveId::P6}) {
        PainleveParameters params;
        params.theta_inf = s.complex(0.6);
        params.theta_X = s.complex_list(finite_pole_count(id), 0.6);
        params.hbar = cplx(1.0, 0.1);
        const cplx t0 = id == PainleveId::P6 ? cplx(2.5, 0.5) : cplx(0.9, 0.0);
        CHECK_MESSAGE(ode_residual(id, params, t0, st) < 1e-6, to_string(id));
    }
}

TEST_CASE("second-order oracle values") {
    const PainleveParameters p2{cplx(0.3, 0.1), {}, cplx(1.0, 0.2)};
    const cplx q(0.4, 0.2), t(0.9, -0.1);
    const cplx p2_rhs = 2.0 * q * q * q + t * q + p2.theta_inf - p2.hbar / 2.0;
    CHECK(std::abs(painleve_rhs_oracle(PainleveId::P2, q, 7.0, t, p2) - p2_rhs) < 1e-15);

    // P5 with zero velocity, evaluated term by term at q = 2, t = 1, hbar = 1.
    const PainleveParameters p5{0.5, {0.5, 1.0}, 1.0};
    // alpha = 0, beta = -1/2, gamma = -2, delta = -1/2:
    // (q-1)^2/t^2 (alpha q + beta/q) = -1/4, gamma q/t = -4, delta q(q+1)/(q-1) = -3.
    CHECK(std::abs(painleve_rhs_oracle(PainleveId::P5, 2.0, 0.0, 1.0, p5) - (-0.25 - 4.0 - 3.0)) < 1e-15);

    // P6 at q = 2, t = 3, zero velocity, hbar = 1, theta = (1/2; 1/2, 1/2, 1/2):
    // alpha = 0, beta = -1/2, gamma = 1/2, delta = 0; prefactor q(q-1)(q-t)/(t^2(t-1)^2) = -1/18.
    const PainleveParameters p6{0.5, {0.5, 0.5, 0.5}, 1.0};
    const cplx bracket = -0.5 * 3.0 / 4.0 + 0.5 * 2.0 / 1.0;
    CHECK(std::abs(painleve_rhs_oracle(PainleveId::P6, 2.0, 0.0, 3.0, p6) - (-1.0 / 18.0) * bracket) < 1e-15);
}

TEST_CASE("second-order oracle rejects the fixed singular points") {
    const PainleveParameters p6{0.1, {0.2, 0.3, 0.4}, 1.0};
    for (cplx q : {cplx(0.0), cplx(1.0), cplx(2.0, 0.5)})
        CHECK_THROWS_AS(painleve_rhs_oracle(PainleveId::P6, q, 0.1, cplx(2.0, 0.5), p6), PoleEvaluationError);
    CHECK_THROWS_AS(painleve_rhs_oracle(PainleveId::P3, 0.0, 0.1, 1.0, {0.1, {0.2}, 1.0}), PoleEvaluationError);
    CHECK_NOTHROW(painleve_rhs_oracle(PainleveId::P2, 0.0, 0.1, 1.0, {0.1, {}, 1.0}));
}

TEST_CASE("preset errors") {
    const DarbouxState st{{cplx(0.4, 0.2)}, {0.1}};
    CHECK_THROWS_AS(painleve_preset(PainleveId::P6, {0.1, {0.2}, 1.0}, {cplx(2.0)}, st), ValidationError);
    CHECK_THROWS_AS(painleve_preset(PainleveId::P2, {0.1, {}, 1.0}, {0.5, 0.6}, st), ValidationError);
    CHECK_THROWS_AS(painleve_preset(PainleveId::P2H2, {0.1, {}, 1.0}, {0.5, 0.6}, st), ValidationError);
}

TEST_CASE("polynomial form of the second P2-hierarchy member") {
    isomono::test::Sampler s(84);
    for (int trial = 0; trial < 5; ++trial) {
        const PainleveParameters params{s.complex(), {}, cplx(1.0, 0.0) + s.complex(0.3)};
        const DarbouxState st = random_state(s, PainleveId::P2H2);
        CHECK(p2h2_polynomial_residual(params, {s.complex(), s.complex()}, st) < 1e-9);
    }
}

TEST_CASE("Fuchsian preset with three poles is Painleve 6") {
    const cvec thX = {cplx(0.2, 0.1), cplx(-0.3, 0.05), cplx(0.15, -0.2)};
    const cplx th(0.25, 0.1), t(2.5, 0.5), hbar(1.0, 0.1);
    const DarbouxState st{{cplx(0.4, 0.2)}, {cplx(0.1, -0.3)}};
    const FuchsianPreset f = fuchsian_preset(3, th, thX, {t}, hbar);
    const PainlevePreset p6 = painleve_preset(PainleveId::P6, {th, thX, hbar}, {t}, st);
    for (int s = 0; s < 3; ++s) CHECK(std::abs(f.config.structure.X[s] - p6.config.structure.X[s]) < 1e-14);
    for (int i = 0; i < 2; ++i) CHECK(isomono::test::max_diff(f.config.t_inf[i], p6.config.t_inf[i]) < 1e-14);
    REQUIRE(f.directions.size() == 1);
    const EvolutionField a = evolution_field(f.config, st, f.directions[0]);
    const EvolutionField b = evolution_field(p6.config, st, p6.directions[0]);
    CHECK(isomono::test::max_diff(a.dq, b.dq) < 1e-13);
    CHECK(isomono::test::max_diff(a.dp, b.dp) < 1e-13);
}

TEST_CASE("Fuchsian preset with four poles") {
    const FuchsianPreset f =
        fuchsian_preset(4, 0.2, {0.1, 0.2, 0.3, -0.1}, {cplx(2.5, 0.5), cplx(-1.5, 0.7)}, cplx(1.0, 0.1));
    CHECK(f.config.genus() == 2);
    CHECK(f.directions.size() == 2);
    CHECK(f.config.structure.X[0] == cplx(0.0));
    CHECK(f.config.structure.X[1] == cplx(1.0));
    const DarbouxState st{{cplx(0.4, 0.2), cplx(0.7, -0.6)}, {cplx(0.1), cplx(0.3)}};
    // Four pole rows against two mu unknowns plus the two undetermined nu at infinity.
    const ComplexMatrix V = assemble_V(f.config, st);
    CHECK(V.rows() == 4);
    CHECK(V.cols() + 2 == 4);
    for (const auto& alpha : f.directions) {
        CHECK(solve_mu(f.config, st, solve_nu(f.config, alpha)).residual < 1e-12);
        const CheckReport rep = check_hamiltonianity(f.config, st, alpha);
        CHECK(rep.passed());
    }
}

TEST_CASE("Fuchsian preset monodromy admissibility") {
    // A zero exponent at a simple pole gives equal sheet residues, i.e. a ramified pole.
    CHECK_THROWS_WITH_AS(fuchsian_preset(3, 0.0, {0.4, -0.4, 0.3}, {cplx(2.0, 1.0)}), "ramified pole at infinity",
                         ValidationError);
    CHECK_THROWS_AS(fuchsian_preset(3, 0.5, {0.4, 0.0, 0.3}, {cplx(2.0, 1.0)}), ValidationError);
    const FuchsianPreset f = fuchsian_preset(3, 0.5, {0.4, -0.4, 0.3}, {cplx(2.0, 1.0)});
    CHECK(validate(f.config).ok);
    CHECK_THROWS_AS(fuchsian_preset(2, 0.0, {0.1, 0.2}, {}), ValidationError);
    CHECK_THROWS_AS(fuchsian_preset(3, 0.0, {0.1, 0.2}, {cplx(2.0)}), ValidationError);
}
