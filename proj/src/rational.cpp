#include "isomono/rational.hpp"

#include <algorithm>
#include <cmath>

namespace isomono {

namespace {

bool same_point(cplx a, cplx b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a));
}

// Taylor coefficients of (u + d)^{-k} in u, first `count` terms.
cvec inverse_power_series(cplx d, int k, int count) {
    cvec out(static_cast<size_t>(std::max(count, 0)));
    if (count <= 0) return out;
    cplx dk = std::pow(d, -k);
    cplx term = dk;
    for (int m = 0; m < count; ++m) {
        out[m] = term;
        // ratio of consecutive terms: -(k+m)/(m+1) / d
        term *= -static_cast<double>(k + m) / static_cast<double>(m + 1) / d;
    }
    return out;
}

cvec series_mul(const cvec& a, const cvec& b, int count) {
    cvec out(static_cast<size_t>(count), 0.0);
    for (int i = 0; i < count && i < (int)a.size(); ++i)
        for (int j = 0; i + j < count && j < (int)b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

void add_into(cvec& dst, const cvec& src) {
    if (dst.size() < src.size()) dst.resize(src.size(), 0.0);
    for (size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

// Polynomial part of p(lambda) * sum_k a_k (lambda - x)^{-k}.
cvec poly_part_of_product(const cvec& p, const PrincipalPart& part) {
    if (p.empty()) return {};
    cvec shifted = taylor_shift(p, part.point);
    cvec in_u;
    for (size_t k = 1; k <= part.coeffs.size(); ++k) {
        for (size_t m = k; m < shifted.size(); ++m) {
            size_t e = m - k;
            if (in_u.size() <= e) in_u.resize(e + 1, 0.0);
            in_u[e] += part.coeffs[k - 1] * shifted[m];
        }
    }
    return taylor_shift(in_u, -part.point);
}

}  // namespace

cvec taylor_shift(const cvec& p, cplx c) {
    cvec q = p;
    const int n = static_cast<int>(q.size());
    for (int i = 0; i < n - 1; ++i)
        for (int j = n - 2; j >= i; --j) q[j] += c * q[j + 1];
    return q;
}

cvec poly_mul(const cvec& a, const cvec& b) {
    if (a.empty() || b.empty()) return {};
    cvec out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

RationalFunction RationalFunction::constant(cplx c) { return RationalFunction(cvec{c}); }

RationalFunction RationalFunction::monomial(int degree, cplx c) {
    cvec p(static_cast<size_t>(degree + 1), 0.0);
    p[degree] = c;
    return RationalFunction(std::move(p));
}

RationalFunction RationalFunction::pole(cplx x, int order, cplx c) {
    RationalFunction f;
    f.add_pole_term(x, order, c);
    return f;
}

RationalFunction RationalFunction::from_roots(const cvec& roots) {
    cvec p{1.0};
    for (cplx r : roots) p = poly_mul(p, cvec{-r, 1.0});
    return RationalFunction(std::move(p));
}

RationalFunction RationalFunction::reciprocal_of_product(const cvec& points,
                                                         const std::vector<int>& orders) {
    RationalFunction f;
    bool any = false;
    for (size_t i = 0; i < points.size(); ++i) {
        const int m = orders[i];
        if (m <= 0) continue;
        any = true;
        cvec h{1.0};
        h.resize(m, 0.0);
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i || orders[j] <= 0) continue;
            h = series_mul(h, inverse_power_series(points[i] - points[j], orders[j], m), m);
        }
        PrincipalPart part{points[i], cvec(m)};
        for (int k = 1; k <= m; ++k) part.coeffs[k - 1] = h[m - k];
        f.parts.push_back(std::move(part));
    }
    if (!any) f.poly = {1.0};
    return f;
}

cplx RationalFunction::evaluate(cplx lambda, double tol_sep) const {
    cplx acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * lambda + *it;
    for (const auto& part : parts) {
        cplx d = lambda - part.point;
        if (std::abs(d) <= tol_sep) throw PoleEvaluationError("evaluation at a pole of a rational function");
        cplx u = 1.0 / d;
        cplx s = 0.0;
        for (auto it = part.coeffs.rbegin(); it != part.coeffs.rend(); ++it) s = s * u + *it;
        acc += s * u;
    }
    return acc;
}

RationalFunction RationalFunction::derivative() const {
    RationalFunction d;
    for (size_t k = 1; k < poly.size(); ++k) d.poly.push_back(static_cast<double>(k) * poly[k]);
    for (const auto& part : parts) {
        PrincipalPart dp{part.point, cvec(part.coeffs.size() + 1, 0.0)};
        for (size_t k = 1; k <= part.coeffs.size(); ++k)
            dp.coeffs[k] = -static_cast<double>(k) * part.coeffs[k - 1];
        d.parts.push_back(std::move(dp));
    }
    return d;
}

const PrincipalPart* RationalFunction::find_part(cplx c, double tol) const {
    for (const auto& part : parts)
        if (same_point(part.point, c, tol)) return &part;
    return nullptr;
}

cplx RationalFunction::principal_coeff(cplx c, int k, double tol) const {
    const PrincipalPart* part = find_part(c, tol);
    if (!part || k < 1 || k > (int)part->coeffs.size()) return 0.0;
    return part->coeffs[k - 1];
}

cplx RationalFunction::poly_coeff(int k) const {
    if (k < 0 || k >= (int)poly.size()) return 0.0;
    return poly[k];
}

cvec RationalFunction::regular_taylor(cplx c, int count, double tol) const {
    cvec out(static_cast<size_t>(std::max(count, 0)), 0.0);
    if (count <= 0) return out;
    cvec shifted = taylor_shift(poly, c);
    for (int m = 0; m < count && m < (int)shifted.size(); ++m) out[m] += shifted[m];
    for (const auto& part : parts) {
        if (same_point(part.point, c, tol)) continue;
        for (size_t k = 1; k <= part.coeffs.size(); ++k) {
            cvec s = inverse_power_series(c - part.point, (int)k, count);
            for (int m = 0; m < count; ++m) out[m] += part.coeffs[k - 1] * s[m];
        }
    }
    return out;
}

cvec RationalFunction::decaying_expansion_at_infinity(int count) const {
    cvec out(static_cast<size_t>(std::max(count, 0)), 0.0);
    for (const auto& part : parts) {
        for (size_t k = 1; k <= part.coeffs.size(); ++k) {
            // (lambda - x)^{-k} = sum_m C(k+m-1, m) x^m lambda^{-k-m}
            cplx term = part.coeffs[k - 1];
            for (int m = 0; (int)k + m <= count; ++m) {
                out[k + m - 1] += term;
                term *= part.point * static_cast<double>(k + m) / static_cast<double>(m + 1);
            }
        }
    }
    return out;
}

void RationalFunction::add_pole_term(cplx x, int order, cplx c) {
    if (order <= 0) {
        if (order == 0) add_into(poly, cvec{c});
        return;
    }
    for (auto& part : parts) {
        if (same_point(part.point, x, 1e-12)) {
            if ((int)part.coeffs.size() < order) part.coeffs.resize(order, 0.0);
            part.coeffs[order - 1] += c;
            return;
        }
    }
    PrincipalPart part{x, cvec(order, 0.0)};
    part.coeffs[order - 1] = c;
    parts.push_back(std::move(part));
}

RationalFunction RationalFunction::without_point(cplx c, double tol) const {
    RationalFunction f;
    f.poly = poly;
    for (const auto& part : parts)
        if (!same_point(part.point, c, tol)) f.parts.push_back(part);
    return f;
}

double RationalFunction::max_abs_coeff() const {
    double m = 0.0;
    for (cplx a : poly) m = std::max(m, std::abs(a));
    for (const auto& part : parts)
        for (cplx a : part.coeffs) m = std::max(m, std::abs(a));
    return m;
}

RationalFunction& RationalFunction::trim(double rel_tol) {
    const double cut = rel_tol * max_abs_coeff();
    while (!poly.empty() && std::abs(poly.back()) <= cut) poly.pop_back();
    for (auto& part : parts)
        while (!part.coeffs.empty() && std::abs(part.coeffs.back()) <= cut) part.coeffs.pop_back();
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const PrincipalPart& p) { return p.coeffs.empty(); }),
                parts.end());
    return *this;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    add_into(poly, o.poly);
    for (const auto& part : o.parts)
        for (size_t k = 1; k <= part.coeffs.size(); ++k) add_pole_term(part.point, (int)k, part.coeffs[k - 1]);
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(cplx s) {
    for (auto& a : poly) a *= s;
    for (auto& part : parts)
        for (auto& a : part.coeffs) a *= s;
    return *this;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction f = *this;
    f *= -1.0;
    return f;
}

RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
RationalFunction operator*(RationalFunction a, cplx s) { return a *= s; }
RationalFunction operator*(cplx s, RationalFunction a) { return a *= s; }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    RationalFunction out;
    out.poly = poly_mul(a.poly, b.poly);
    for (const auto& part : b.parts) add_into(out.poly, poly_part_of_product(a.poly, part));
    for (const auto& part : a.parts) add_into(out.poly, poly_part_of_product(b.poly, part));

    cvec points;
    for (const auto& part : a.parts) points.push_back(part.point);
    for (const auto& part : b.parts)
        if (!a.has_point(part.point)) points.push_back(part.point);

    for (cplx c : points) {
        const PrincipalPart* pa = a.find_part(c);
        const PrincipalPart* pb = b.find_part(c);
        const int da = pa ? (int)pa->coeffs.size() : 0;
        const int db = pb ? (int)pb->coeffs.size() : 0;
        cvec ra = a.regular_taylor(c, db);
        cvec rb = b.regular_taylor(c, da);
        PrincipalPart prod{c, cvec(da + db, 0.0)};
        for (int i = 1; i <= da; ++i) {
            for (int j = 1; j <= db; ++j) prod.coeffs[i + j - 1] += pa->coeffs[i - 1] * pb->coeffs[j - 1];
            for (int m = 0; m < i; ++m) prod.coeffs[i - m - 1] += pa->coeffs[i - 1] * rb[m];
        }
        for (int j = 1; j <= db; ++j)
            for (int m = 0; m < j; ++m) prod.coeffs[j - m - 1] += pb->coeffs[j - 1] * ra[m];
        out.parts.push_back(std::move(prod));
    }
    return out;
}

RationalFunction differentiate(const RationalFunction& f) { return f.derivative(); }

cplx evaluate(const RationalFunction& f, cplx lambda, double tol_sep) { return f.evaluate(lambda, tol_sep); }

cplx residue_at(const RationalFunction& f, cplx c, int weight_power, double tol) {
    if (!f.has_point(c, tol)) throw Error("residue requested at an unmarked point");
    const int k = weight_power + 1;
    if (k >= 1) return f.principal_coeff(c, k, tol);
    const int m = -k;
    return f.regular_taylor(c, m + 1, tol)[m];
}

cplx residue_at_infinity(const RationalFunction& f, int weight_power) {
    const int e = -1 - weight_power;
    if (e >= 0) return -f.poly_coeff(e);
    return -f.decaying_expansion_at_infinity(-e)[-e - 1];
}

}  // namespace isomono
