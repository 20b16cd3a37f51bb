#include "isomono/lax.hpp"

#include "isomono/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace isomono {

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}
Mat2 Mat2::operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
Mat2 Mat2::operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
Mat2 Mat2::operator*(cplx s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
double Mat2::max_abs() const {
    return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}
Mat2 Mat2::inverse() const {
    cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Mat2 LaxMatrix::evaluate(cplx lambda, double tol_sep) const {
    return {e11.evaluate(lambda, tol_sep), e12.evaluate(lambda, tol_sep),
            e21.evaluate(lambda, tol_sep), e22.evaluate(lambda, tol_sep)};
}

namespace {

RationalFunction inverse_pole_product(const ConnectionConfig& config) {
    return RationalFunction::reciprocal_of_product(config.structure.X, config.structure.r);
}

RationalFunction inverse_node_product(const DarbouxState& state) {
    return RationalFunction::reciprocal_of_product(state.q, std::vector<int>(state.q.size(), 1));
}

cplx sum_of(const cvec& v) {
    cplx s = 0.0;
    for (cplx x : v) s += x;
    return s;
}

}  // namespace

RationalFunction build_Q_polynomial(const ConnectionConfig& config, const DarbouxState& state, double tol_sep) {
    const int g = state.size();
    RationalFunction Q;
    for (int i = 0; i < g; ++i) {
        cplx value = -state.p[i];
        for (int s = 0; s < config.n(); ++s)
            value *= std::pow(state.q[i] - config.structure.X[s], config.structure.r[s]);
        cvec others;
        cplx denom = 1.0;
        for (int j = 0; j < g; ++j) {
            if (j == i) continue;
            cplx d = state.q[i] - state.q[j];
            if (std::abs(d) <= tol_sep) throw NodeCollisionError("coincident nodes in Q interpolation");
            denom *= d;
            others.push_back(state.q[j]);
        }
        Q += RationalFunction::from_roots(others) * (value / denom);
    }
    return Q;
}

cplx compute_eta0(const ConnectionConfig& config, const DarbouxState& state, const IsospectralHamiltonians* H) {
    const int r = config.r_inf();
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;
    cplx shift = sum_of(state.q);
    for (int s = 0; s < config.n(); ++s) shift -= static_cast<double>(rs[s]) * X[s];
    if (r >= 2) return config.t_inf[0][r - 2] + config.t_inf[0][r - 1] * shift;

    if (!H) throw Error("eta0 at r_inf = 1 needs the isospectral Hamiltonians");
    const cplx t1 = config.t_inf[0][0];
    const cplx t2 = config.t_inf[1][0];
    const cplx hb = config.hbar;
    cplx acc = 0.0;
    for (int s = 0; s < config.n(); ++s) {
        if (rs[s] == 1) acc -= 2.0 * X[s] * p2_coefficient_at_pole(config, s, 2);
        if (rs[s] == 2) acc -= p2_coefficient_at_pole(config, s, 3);
        const cvec& h = H->H_X[s];
        acc += X[s] * X[s] * h[0];
        if (rs[s] >= 2) acc += 2.0 * X[s] * h[1];
        if (rs[s] >= 3) acc += h[2];
        cplx monodromy_part = X[s] * (config.t_X[s][0][0] + config.t_X[s][1][0]);
        if (rs[s] >= 2) monodromy_part += config.t_X[s][0][1] + config.t_X[s][1][1];
        acc -= t1 * monodromy_part;
    }
    for (int j = 0; j < state.size(); ++j) acc -= hb * state.p[j] * state.q[j] * state.q[j];
    acc += t1 * (t1 - t2 - hb) * shift;
    return acc / (t1 - t2);
}

cvec isospectral_rhs(const ConnectionConfig& config, const DarbouxState& state) {
    const int g = state.size();
    const int r = config.r_inf();
    const cplx hb = config.hbar;
    const RationalFunction P1 = compute_P1(config);
    const RationalFunction P2t = compute_P2_tilde(config);
    cvec rhs(g);
    for (int j = 0; j < g; ++j) {
        const cplx q = state.q[j];
        const cplx p = state.p[j];
        cplx v = p * p - P1.evaluate(q) * p + P2t.evaluate(q);
        for (int s = 0; s < config.n(); ++s)
            v += p * hb * static_cast<double>(config.structure.r[s]) / (q - config.structure.X[s]);
        for (int i = 0; i < g; ++i)
            if (i != j) v += hb * (state.p[i] - p) / (q - state.q[i]);
        if (r >= 3) v += hb * config.t_inf[0][r - 1] * std::pow(q, r - 3);
        rhs[j] = v;
    }
    return rhs;
}

IsospectralHamiltonians solve_isospectral_H(const ConnectionConfig& config, const DarbouxState& state) {
    const int g = state.size();
    const int r = config.r_inf();
    const int n = config.n();
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;
    const cplx hb = config.hbar;
    const int n_inf = std::max(0, r - 3);
    const int unknowns = n_inf + config.structure.total_finite_order();
    const int extra = r == 2 ? 1 : (r == 1 ? 2 : 0);
    if (unknowns != g + extra) throw Error("isospectral system is not square");

    ComplexMatrix A(unknowns, unknowns);
    cvec b = isospectral_rhs(config, state);
    b.resize(unknowns, 0.0);
    for (int j = 0; j < g; ++j) {
        int col = 0;
        for (int k = 0; k < n_inf; ++k) A(j, col++) = std::pow(state.q[j], k);
        for (int s = 0; s < n; ++s)
            for (int k = 1; k <= rs[s]; ++k) A(j, col++) = std::pow(state.q[j] - X[s], -k);
    }
    // Column offset of H_{X_s,1}.
    std::vector<int> offset(n);
    for (int s = 0, col = n_inf; s < n; ++s) {
        offset[s] = col;
        col += rs[s];
    }
    const cvec& ti1 = config.t_inf[0];
    const cvec& ti2 = config.t_inf[1];
    if (r == 2) {
        for (int s = 0; s < n; ++s) A(g, offset[s]) = 1.0;
        b[g] = hb * sum_of(state.p) - (ti1[1] * ti2[0] + ti2[1] * ti1[0] + hb * ti1[1]);
    } else if (r == 1) {
        cplx qp = 0.0;
        for (int j = 0; j < g; ++j) qp += state.q[j] * state.p[j];
        cplx mono = 0.0;
        for (int s = 0; s < n; ++s) {
            A(g, offset[s]) = X[s];
            if (rs[s] >= 2) A(g, offset[s] + 1) = 1.0;
            if (rs[s] == 1) mono += config.t_X[s][0][0] * config.t_X[s][1][0];
            A(g + 1, offset[s]) = 1.0;
        }
        b[g] = hb * qp + mono - ti1[0] * (ti2[0] + hb);
        b[g + 1] = hb * sum_of(state.p);
    }
    cvec sol = dense_solve(A, b);
    IsospectralHamiltonians H;
    H.H_inf.assign(sol.begin(), sol.begin() + n_inf);
    for (int s = 0; s < n; ++s) H.H_X.emplace_back(sol.begin() + offset[s], sol.begin() + offset[s] + rs[s]);
    return H;
}

LaxMatrix build_L_companion(const ConnectionConfig& config, const DarbouxState& state,
                            const IsospectralHamiltonians& H) {
    const int r = config.r_inf();
    const cplx hb = config.hbar;
    LaxMatrix L;
    L.gauge = Gauge::companion;
    L.e12 = RationalFunction::constant(1.0);

    RationalFunction l21 = -compute_P2_tilde(config);
    for (size_t j = 0; j < H.H_inf.size(); ++j) l21 += RationalFunction::monomial((int)j, H.H_inf[j]);
    for (int s = 0; s < config.n(); ++s)
        for (int j = 1; j <= config.structure.r[s]; ++j) l21.add_pole_term(config.structure.X[s], j, H.H_X[s][j - 1]);
    if (r >= 3) l21 -= RationalFunction::monomial(r - 3, hb * config.t_inf[0][r - 1]);
    for (int j = 0; j < state.size(); ++j) l21.add_pole_term(state.q[j], 1, -hb * state.p[j]);
    L.e21 = l21;

    RationalFunction l22 = compute_P1(config);
    for (int j = 0; j < state.size(); ++j) l22.add_pole_term(state.q[j], 1, hb);
    for (int s = 0; s < config.n(); ++s)
        l22.add_pole_term(config.structure.X[s], 1, -hb * static_cast<double>(config.structure.r[s]));
    L.e22 = l22;
    return L;
}

LaxMatrix build_L_check(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H) {
    const LaxMatrix L = build_L_companion(config, state, H);
    const RationalFunction Q = build_Q_polynomial(config, state);
    const RationalFunction inv_X = inverse_pole_product(config);
    const RationalFunction inv_q = inverse_node_product(state);
    const RationalFunction prod_X = pole_product(config);
    const RationalFunction prod_q = node_product(state);
    const RationalFunction P1 = compute_P1(config);
    const RationalFunction Q_over_X = Q * inv_X;
    const RationalFunction Q_over_q = Q * inv_q;

    LaxMatrix C;
    C.gauge = Gauge::check;
    C.e11 = -Q_over_X;
    C.e12 = prod_q * inv_X;
    C.e22 = P1 + Q_over_X;
    RationalFunction e21 = config.hbar * differentiate(Q_over_q) + L.e21 * (prod_X * inv_q) - P1 * Q_over_q -
                           Q_over_q * Q_over_X;
    // Poles at the nodes cancel identically; drop the rounding residue.
    for (cplx q : state.q) e21 = e21.without_point(q);
    C.e21 = e21;
    for (RationalFunction* e : {&C.e11, &C.e12, &C.e21, &C.e22}) e->trim();
    return C;
}

LaxMatrix tilde_from_check(const ConnectionConfig& config, const LaxMatrix& C, cplx eta0) {
    const int r = config.r_inf();
    const cplx lead = config.t_inf[0][r - 1];
    const RationalFunction ell(cvec{eta0, lead});
    LaxMatrix T;
    T.gauge = Gauge::tilde;
    T.e11 = C.e11 - ell * C.e12;
    T.e12 = C.e12;
    T.e21 = C.e21 - (ell * ell) * C.e12 + ell * (C.e11 - C.e22) + RationalFunction::constant(config.hbar * lead);
    T.e22 = C.e22 + ell * C.e12;
    for (RationalFunction* e : {&T.e11, &T.e12, &T.e21, &T.e22}) e->trim();
    return T;
}

LaxMatrix build_L_tilde(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H) {
    return tilde_from_check(config, build_L_check(config, state, H), compute_eta0(config, state, &H));
}

LaxMatrix build_L_c(const ConnectionConfig& config, const DarbouxState& state, const IsospectralHamiltonians& H) {
    const LaxMatrix L = build_L_companion(config, state, H);
    LaxMatrix C;
    C.gauge = Gauge::c;
    C.e12 = node_product(state) * inverse_pole_product(config);
    C.e21 = (pole_product(config) * inverse_node_product(state)) * L.e21;
    C.e22 = compute_P1(config);
    C.e12.trim();
    C.e21.trim();
    return C;
}

std::pair<RationalFunction, RationalFunction> classical_spectral_curve(const ConnectionConfig& config,
                                                                       const DarbouxState& state) {
    ConnectionConfig classical = config;
    classical.hbar = 0.0;
    const IsospectralHamiltonians H = solve_isospectral_H(classical, state);
    const LaxMatrix L = build_L_companion(classical, state, H);
    // Tr L = L22, det L = -L21 in the companion gauge.
    return {RationalFunction(L.e22).trim(), (-L.e21).trim()};
}

std::pair<RationalFunction, RationalFunction> classical_spectral_curve_tilde(const ConnectionConfig& config,
                                                                             const DarbouxState& state) {
    ConnectionConfig classical = config;
    classical.hbar = 0.0;
    const IsospectralHamiltonians H = solve_isospectral_H(classical, state);
    const LaxMatrix T = build_L_tilde(classical, state, H);
    RationalFunction tr = T.e11 + T.e22;
    RationalFunction det = T.e11 * T.e22 - T.e12 * T.e21;
    return {tr.trim(), det.trim()};
}

cplx wronskian_shape(const ConnectionConfig& config, const DarbouxState& state, cplx lambda, double tol_sep) {
    const RationalFunction P1 = compute_P1(config);
    auto primitive = [&](cplx x) {
        cplx acc = 0.0;
        for (size_t k = 0; k < P1.poly.size(); ++k)
            acc += P1.poly[k] * std::pow(x, (int)k + 1) / static_cast<double>(k + 1);
        for (const auto& part : P1.parts) {
            cplx d = x - part.point;
            if (std::abs(d) <= tol_sep) throw PoleEvaluationError("Wronskian evaluated at a pole");
            acc += part.coeffs[0] * std::log(d);
            for (size_t k = 2; k <= part.coeffs.size(); ++k)
                acc += part.coeffs[k - 1] * std::pow(d, 1 - (int)k) / (1.0 - static_cast<double>(k));
        }
        return acc;
    };
    bool zero_is_pole = false;
    for (const auto& part : P1.parts) zero_is_pole = zero_is_pole || std::abs(part.point) <= tol_sep;
    cplx integral = primitive(lambda) - (zero_is_pole ? cplx(0.0) : primitive(0.0));
    cplx shape = node_product(state).evaluate(lambda) / pole_product(config).evaluate(lambda);
    if (P1.poly.empty() && P1.parts.empty()) return shape;
    return shape * std::exp(integral / config.hbar);
}

IsospectralHamiltonians hamiltonians_from_trace_residues(const ConnectionConfig& config,
                                                         const DarbouxState& state,
                                                         const IsospectralHamiltonians& H) {
    const LaxMatrix C = build_L_c(config, state, H);
    const RationalFunction P1 = compute_P1(config);
    const RationalFunction trace_sq = C.e11 * C.e11 + 2.0 * (C.e12 * C.e21) + C.e22 * C.e22 - P1 * P1;
    IsospectralHamiltonians out;
    const int r = config.r_inf();
    for (int j = 0; j <= r - 4; ++j) out.H_inf.push_back(-0.5 * residue_at_infinity(trace_sq, -j - 1));
    for (int s = 0; s < config.n(); ++s) {
        cvec h;
        for (int j = 1; j <= config.structure.r[s]; ++j)
            h.push_back(0.5 * residue_at(trace_sq, config.structure.X[s], j - 1));
        out.H_X.push_back(h);
    }
    return out;
}

cplx eta0_from_normalization(const ConnectionConfig& config, const DarbouxState& state,
                             const IsospectralHamiltonians& H) {
    const LaxMatrix C = build_L_check(config, state, H);
    const int r = config.r_inf();
    // The lambda^{r-2} coefficient of the tilde (2,1) entry is affine in eta0 and must vanish.
    auto coeff = [&](cplx eta) {
        const LaxMatrix T = tilde_from_check(config, C, eta);
        if (r >= 2) return T.e21.poly_coeff(r - 2);
        return T.e21.decaying_expansion_at_infinity(1)[0];
    };
    const cplx c0 = coeff(0.0);
    return -c0 / (coeff(1.0) - c0);
}

}  // namespace isomono
