#pragma once

#include "isomono/types.hpp"

#include <optional>

namespace isomono {

// Principal part sum_k coeffs[k-1] (lambda - point)^{-k}.
struct PrincipalPart {
    cplx point;
    cvec coeffs;
};

// Polynomial part plus principal parts at distinct marked points.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(cvec poly_coeffs) : poly(std::move(poly_coeffs)) {}

    static RationalFunction constant(cplx c);
    static RationalFunction monomial(int degree, cplx c = 1.0);
    // c (lambda - x)^{-order}
    static RationalFunction pole(cplx x, int order, cplx c = 1.0);
    // prod_i (lambda - roots[i])
    static RationalFunction from_roots(const cvec& roots);
    // prod_i (lambda - points[i])^{-orders[i]} expanded in partial fractions.
    static RationalFunction reciprocal_of_product(const cvec& points, const std::vector<int>& orders);

    cvec poly;
    std::vector<PrincipalPart> parts;

    cplx evaluate(cplx lambda, double tol_sep = 1e-8) const;
    RationalFunction derivative() const;

    // Coefficient of (lambda - c)^{-k}, 0 when c is unmarked or k beyond the stored order.
    cplx principal_coeff(cplx c, int k, double tol = 1e-12) const;
    cplx poly_coeff(int k) const;
    const PrincipalPart* find_part(cplx c, double tol = 1e-12) const;
    bool has_point(cplx c, double tol = 1e-12) const { return find_part(c, tol) != nullptr; }
    int poly_degree() const { return static_cast<int>(poly.size()) - 1; }

    // First `count` Taylor coefficients at c of everything except the principal part at c.
    cvec regular_taylor(cplx c, int count, double tol = 1e-12) const;
    // Coefficients of lambda^{-1}, lambda^{-2}, ... of the part that decays at infinity.
    cvec decaying_expansion_at_infinity(int count) const;

    void add_pole_term(cplx x, int order, cplx c);
    RationalFunction without_point(cplx c, double tol = 1e-12) const;
    RationalFunction& trim(double rel_tol = 1e-13);
    double max_abs_coeff() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(cplx s);
    RationalFunction operator-() const;
};

RationalFunction operator+(RationalFunction a, const RationalFunction& b);
RationalFunction operator-(RationalFunction a, const RationalFunction& b);
RationalFunction operator*(RationalFunction a, cplx s);
RationalFunction operator*(cplx s, RationalFunction a);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

RationalFunction differentiate(const RationalFunction& f);
cplx evaluate(const RationalFunction& f, cplx lambda, double tol_sep = 1e-8);

// Res_{lambda=c} f(lambda) (lambda - c)^{weight_power} for a finite marked point c.
cplx residue_at(const RationalFunction& f, cplx c, int weight_power, double tol = 1e-12);
// Res_{lambda=inf} f(lambda) lambda^{weight_power}, i.e. minus the coefficient of lambda^{-1}.
cplx residue_at_infinity(const RationalFunction& f, int weight_power);

// Taylor shift: coefficients of p in powers of (lambda - c).
cvec taylor_shift(const cvec& p, cplx c);
cvec poly_mul(const cvec& a, const cvec& b);

}  // namespace isomono
