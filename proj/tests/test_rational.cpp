#include "isomono/rational.hpp"

#include "test_helpers.hpp"

using namespace isomono;
using isomono::test::Sampler;

namespace {

RationalFunction random_rational(Sampler& s, int degree, const cvec& points, int max_order) {
    RationalFunction f(s.complex_list(degree + 1));
    for (cplx x : points)
        for (int k = 1; k <= max_order; ++k) f.add_pole_term(x, k, s.complex());
    return f;
}

cplx direct_value(const RationalFunction& f, cplx lam) {
    cplx v = 0.0, pw = 1.0;
    for (cplx c : f.poly) {
        v += c * pw;
        pw *= lam;
    }
    for (const auto& part : f.parts)
        for (size_t k = 0; k < part.coeffs.size(); ++k) v += part.coeffs[k] / std::pow(lam - part.point, static_cast<int>(k + 1));
    return v;
}

}  // namespace

TEST_CASE("evaluation matches the term-by-term sum") {
    Sampler s(1);
    for (int trial = 0; trial < 20; ++trial) {
        const RationalFunction f = random_rational(s, 3, {cplx(0.5, 0.1), cplx(-0.7, 0.4)}, 3);
        const cplx lam = s.complex(2.0) + 3.0;
        CHECK(std::abs(f.evaluate(lam) - direct_value(f, lam)) < 1e-12 * std::max(1.0, std::abs(direct_value(f, lam))));
    }
}

TEST_CASE("evaluating at a marked point raises") {
    RationalFunction f = RationalFunction::pole(cplx(1.0, 2.0), 2, 3.0);
    CHECK_THROWS_AS(f.evaluate(cplx(1.0, 2.0)), PoleEvaluationError);
    CHECK_NOTHROW(f.evaluate(cplx(1.0, 2.1)));
}

TEST_CASE("derivative agrees with a central difference") {
    Sampler s(2);
    const RationalFunction f = random_rational(s, 4, {cplx(0.3, 0.0), cplx(-1.0, 0.5)}, 2);
    const RationalFunction df = f.derivative();
    for (int trial = 0; trial < 10; ++trial) {
        const cplx lam = s.complex(1.0) + cplx(2.0, 1.0);
        const double h = 1e-5;
        const cplx fd = (f.evaluate(lam + h) - f.evaluate(lam - h)) / (2.0 * h);
        CHECK(std::abs(df.evaluate(lam) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("products, sums and scalar multiples evaluate pointwise") {
    Sampler s(3);
    const RationalFunction a = random_rational(s, 2, {cplx(0.2, 0.2)}, 2);
    const RationalFunction b = random_rational(s, 1, {cplx(0.2, 0.2), cplx(1.1, -0.3)}, 3);
    const cplx c = s.complex();
    for (int trial = 0; trial < 10; ++trial) {
        const cplx lam = s.complex(1.5) + cplx(0.0, 2.5);
        const cplx av = a.evaluate(lam), bv = b.evaluate(lam);
        CHECK(std::abs((a * b).evaluate(lam) - av * bv) < 1e-11 * std::max(1.0, std::abs(av * bv)));
        CHECK(std::abs((a + b).evaluate(lam) - (av + bv)) < 1e-12 * std::max(1.0, std::abs(av + bv)));
        CHECK(std::abs((a - b).evaluate(lam) - (av - bv)) < 1e-12 * std::max(1.0, std::abs(av - bv)));
        CHECK(std::abs((c * a).evaluate(lam) - c * av) < 1e-12 * std::max(1.0, std::abs(c * av)));
    }
}

TEST_CASE("reciprocal of a product is expanded in partial fractions") {
    const cvec points = {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(-0.5, 0.8)};
    const std::vector<int> orders = {2, 1, 3};
    const RationalFunction f = RationalFunction::reciprocal_of_product(points, orders);
    CHECK(f.poly_degree() < 0);
    Sampler s(4);
    for (int trial = 0; trial < 10; ++trial) {
        const cplx lam = s.complex(1.0) + cplx(2.0, -1.0);
        cplx direct = 1.0;
        for (size_t i = 0; i < points.size(); ++i) direct /= std::pow(lam - points[i], orders[i]);
        CHECK(std::abs(f.evaluate(lam) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("from_roots gives the monic polynomial with those roots") {
    const cvec roots = {cplx(1.0, 1.0), cplx(-2.0, 0.5), 0.25};
    const RationalFunction f = RationalFunction::from_roots(roots);
    CHECK(f.poly_degree() == 3);
    CHECK(std::abs(f.poly_coeff(3) - 1.0) < 1e-15);
    for (cplx r : roots) CHECK(std::abs(f.evaluate(r)) < 1e-14);
}

TEST_CASE("residues at finite points pick the weighted principal coefficient") {
    const cplx x(0.4, -0.2);
    RationalFunction f = RationalFunction::pole(x, 1, 2.0) + RationalFunction::pole(x, 3, cplx(0.0, 5.0));
    f.poly = {1.0, 2.0};
    CHECK(std::abs(residue_at(f, x, 0) - 2.0) < 1e-15);
    CHECK(std::abs(residue_at(f, x, 1)) < 1e-15);
    CHECK(std::abs(residue_at(f, x, 2) - cplx(0.0, 5.0)) < 1e-15);
    CHECK(std::abs(f.principal_coeff(x, 3) - cplx(0.0, 5.0)) < 1e-15);
    CHECK(std::abs(f.principal_coeff(cplx(9.0, 9.0), 1)) == 0.0);
}

TEST_CASE("residue at infinity is minus the coefficient of 1/lambda") {
    CHECK(std::abs(residue_at_infinity(RationalFunction::pole(0.0, 1), 0) + 1.0) < 1e-15);
    CHECK(std::abs(residue_at_infinity(RationalFunction::pole(0.0, 2), 1) + 1.0) < 1e-15);
    // lambda^2 / (lambda - x) = lambda + x + x^2 / lambda + ...
    const cplx x(0.3, 0.7);
    CHECK(std::abs(residue_at_infinity(RationalFunction::pole(x, 1), 1) + x) < 1e-15);
    CHECK(std::abs(residue_at_infinity(RationalFunction::monomial(3, 2.0), 0)) == 0.0);
}

TEST_CASE("expansion at infinity of a simple pole is geometric") {
    const cplx x(0.6, -0.3);
    const cvec e = RationalFunction::pole(x, 1).decaying_expansion_at_infinity(4);
    REQUIRE(e.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - std::pow(x, k)) < 1e-15);
}

TEST_CASE("Taylor shift re-expands a polynomial around a point") {
    Sampler s(5);
    const cvec p = s.complex_list(6);
    const cplx c = s.complex(2.0);
    const cvec shifted = taylor_shift(p, c);
    const RationalFunction orig(p), moved(shifted);
    for (int trial = 0; trial < 5; ++trial) {
        const cplx lam = s.complex(1.0);
        CHECK(std::abs(orig.evaluate(lam) - moved.evaluate(lam - c)) < 1e-12 * std::max(1.0, std::abs(orig.evaluate(lam))));
    }
}

TEST_CASE("regular Taylor coefficients drop the principal part at the point") {
    const cplx c(0.5, 0.5), other(-1.0, 0.0);
    RationalFunction f = RationalFunction::pole(c, 2, 3.0) + RationalFunction::pole(other, 1, 2.0);
    f.poly = {1.0, 0.0, 1.0};
    const cvec t = f.regular_taylor(c, 3);
    const RationalFunction g = f.without_point(c);
    // g(c + h) = t0 + t1 h + t2 h^2 + ...
    const cplx d = c - other;
    CHECK(std::abs(t[0] - g.evaluate(c)) < 1e-14);
    CHECK(std::abs(t[1] - (2.0 * c - 2.0 / (d * d))) < 1e-13);
    CHECK(std::abs(t[2] - (1.0 + 2.0 / (d * d * d))) < 1e-13);
}

TEST_CASE("trim removes relatively negligible coefficients") {
    RationalFunction f({1.0, 1e-18, 0.0});
    f.trim(1e-13);
    CHECK(f.poly_degree() == 0);
}

TEST_CASE("poly_mul convolves coefficient lists") {
    const cvec a = {1.0, 2.0}, b = {3.0, 0.0, 1.0};
    const cvec c = poly_mul(a, b);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == cplx(3.0));
    CHECK(c[1] == cplx(6.0));
    CHECK(c[2] == cplx(1.0));
    CHECK(c[3] == cplx(2.0));
}

TEST_CASE("literal evaluation and differentiation examples") {
    CHECK(std::abs(RationalFunction::pole(1.0, 1).evaluate(2.0) - 1.0) < 1e-15);
    RationalFunction f = RationalFunction::pole(5.0, 1, 3.0);
    f.poly = {0.0, 0.0, 1.0};
    CHECK(std::abs(f.evaluate(0.0) + 0.6) < 1e-15);
    CHECK(RationalFunction().evaluate(cplx(0.3, 0.2)) == cplx(0.0));

    const RationalFunction cube = differentiate(RationalFunction::monomial(3));
    CHECK(std::abs(cube.poly_coeff(2) - 3.0) < 1e-15);
    CHECK(cube.poly_degree() == 2);
    const cplx x(0.2, 0.9);
    const RationalFunction dp = differentiate(RationalFunction::pole(x, 2));
    CHECK(std::abs(dp.principal_coeff(x, 3) + 2.0) < 1e-15);
    CHECK(std::abs(dp.principal_coeff(x, 2)) == 0.0);
    CHECK(std::abs(differentiate(RationalFunction::constant(4.0)).evaluate(1.0)) == 0.0);
    CHECK(std::abs(residue_at(RationalFunction::pole(5.0, 1, 3.0), 5.0, 0) - 3.0) < 1e-15);
}

TEST_CASE("derivative agrees with the relative-step central difference on random functions") {
    Sampler s(6);
    for (int trial = 0; trial < 30; ++trial) {
        const RationalFunction f = random_rational(s, s.integer(0, 5), s.complex_list(s.integer(0, 3), 1.0), s.integer(1, 3));
        cplx lam;
        bool clear = false;
        while (!clear) {
            lam = s.complex(2.5);
            clear = true;
            for (const auto& part : f.parts) clear = clear && std::abs(lam - part.point) > 0.5;
        }
        const double h = 1e-6 * std::max(1.0, std::abs(lam));
        const cplx fd = (f.evaluate(lam + h) - f.evaluate(lam - h)) / (2.0 * h);
        CHECK(std::abs(f.derivative().evaluate(lam) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
}
