#include "isomono/deformation.hpp"

#include "isomono/flow.hpp"

#include <cmath>

namespace isomono {

namespace {

cplx sheet_diff(const SheetPair& pair, int k) { return pair[0][k] - pair[1][k]; }

}  // namespace

NuBlock solve_nu(const ConnectionConfig& config, const DeformationVector& alpha, double tol_sep) {
    const int r = config.r_inf();
    NuBlock nu;
    nu.nu_inf.assign(std::max(2, r - 1), 0.0);
    if (r >= 3) {
        cvec column, rhs;
        for (int m = 0; m < r - 1; ++m) {
            const int k = r - 1 - m;
            column.push_back(config.delta_inf(k));
            rhs.push_back(sheet_diff(alpha.a_inf, k) / static_cast<double>(k));
        }
        nu.nu_inf = lower_toeplitz_solve(column, rhs, tol_sep);
    } else if (r == 2) {
        if (std::abs(config.delta_inf(1)) <= tol_sep) throw RamifiedPoleError("ramified pole at infinity");
        nu.nu_inf[0] = sheet_diff(alpha.a_inf, 1) / config.delta_inf(1);
        nu.zero_determined = false;
    } else {
        nu.minus1_determined = false;
        nu.zero_determined = false;
    }
    for (int s = 0; s < config.n(); ++s) {
        const int rs = config.structure.r[s];
        cvec column, rhs;
        for (int m = 0; m < rs - 1; ++m) {
            const int k = rs - 1 - m;
            column.push_back(config.delta_X(s, k));
            rhs.push_back(-sheet_diff(alpha.a_X[s], k) / static_cast<double>(k));
        }
        cvec sol = lower_toeplitz_solve(column, rhs, tol_sep);
        cvec block{-alpha.a_pos[s]};
        block.insert(block.end(), sol.begin(), sol.end());
        nu.nu_X.push_back(block);
    }
    return nu;
}

NuBlock solve_nu_recursive(const ConnectionConfig& config, const DeformationVector& alpha) {
    const int r = config.r_inf();
    NuBlock nu;
    nu.nu_inf.assign(std::max(2, r - 1), 0.0);
    if (r >= 2) {
        const cplx lead = config.delta_inf(r - 1);
        auto at = [&](int i) -> cplx& { return nu.nu_inf[i + 1]; };
        for (int k = r - 1; k >= 1; --k) {
            cplx acc = sheet_diff(alpha.a_inf, k) / static_cast<double>(k);
            for (int i = -1; i <= r - 3 - k; ++i) acc -= config.delta_inf(k + i + 1) * at(i);
            at(r - 2 - k) = acc / lead;
        }
        nu.zero_determined = r >= 3;
    } else {
        nu.minus1_determined = false;
        nu.zero_determined = false;
    }
    for (int s = 0; s < config.n(); ++s) {
        const int rs = config.structure.r[s];
        cvec block(rs, 0.0);
        block[0] = -alpha.a_pos[s];
        const cplx lead = config.delta_X(s, rs - 1);
        for (int k = rs - 1; k >= 1; --k) {
            cplx acc = -sheet_diff(alpha.a_X[s], k) / static_cast<double>(k);
            for (int i = 1; i <= rs - 1 - k; ++i) acc -= config.delta_X(s, k + i - 1) * block[i];
            block[rs - k] = acc / lead;
        }
        nu.nu_X.push_back(block);
    }
    return nu;
}

ComplexMatrix assemble_V(const ConnectionConfig& config, const DarbouxState& state) {
    const int g = state.size();
    const int r = config.r_inf();
    const int rows = std::max(0, r - 3) + config.structure.total_finite_order();
    ComplexMatrix V(rows, g);
    int row = 0;
    for (int k = 0; k <= r - 4; ++k, ++row)
        for (int j = 0; j < g; ++j) V(row, j) = std::pow(state.q[j], k);
    for (int s = 0; s < config.n(); ++s)
        for (int k = 1; k <= config.structure.r[s]; ++k, ++row)
            for (int j = 0; j < g; ++j) V(row, j) = std::pow(state.q[j] - config.structure.X[s], -k);
    return V;
}

cplx V_determinant_closed_form(const ConnectionConfig& config, const DarbouxState& state) {
    const int g = state.size();
    const int n = config.n();
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;
    // sign of the row permutation taking the scaled node rows to ascending powers
    const int e = std::max(0, config.r_inf() - 3);
    const int N = config.structure.total_finite_order();
    cplx d = ((N * (N - 1) / 2 + e * N) % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) d *= state.q[j] - state.q[i];
    for (int i = 0; i < g; ++i)
        for (int s = 0; s < n; ++s) d /= std::pow(state.q[i] - X[s], rs[s]);
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < s; ++u) d *= std::pow(X[s] - X[u], rs[s] * rs[u]);
    return d;
}

MuSolution solve_mu(const ConnectionConfig& config, const DarbouxState& state, const NuBlock& nu) {
    const int g = state.size();
    const int r = config.r_inf();
    const auto& X = config.structure.X;
    const ComplexMatrix V = assemble_V(config, state);
    const int extra = (nu.zero_determined ? 0 : 1) + (nu.minus1_determined ? 0 : 1);
    const int rows = V.rows();
    if (rows != g + extra) throw Error("node system is not square");
    const int col_zero = g;
    const int col_minus1 = g + (nu.zero_determined ? 0 : 1);

    ComplexMatrix A(rows, rows);
    cvec b(rows, 0.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < g; ++j) A(i, j) = V(i, j);
    int row = 0;
    for (int k = 0; k <= r - 4; ++k, ++row) b[row] = nu.nu_infinity(k + 1);
    for (int s = 0; s < config.n(); ++s) {
        const cvec& nx = nu.nu_X[s];
        for (int k = 1; k <= config.structure.r[s]; ++k, ++row) {
            if (k == 1) {
                b[row] = -nx[0];
                if (nu.zero_determined) b[row] += nu.nu_infinity(0);
                else A(row, col_zero) = -1.0;
                if (nu.minus1_determined) b[row] += nu.nu_infinity(-1) * X[s];
                else A(row, col_minus1) = -X[s];
            } else if (k == 2) {
                b[row] = -nx[1];
                if (nu.minus1_determined) b[row] += nu.nu_infinity(-1);
                else A(row, col_minus1) = -1.0;
            } else {
                b[row] = -nx[k - 1];
            }
        }
    }
    cvec sol = dense_solve(A, b);
    MuSolution out;
    out.mu.assign(sol.begin(), sol.begin() + g);
    out.nu_zero = nu.zero_determined ? nu.nu_infinity(0) : sol[col_zero];
    out.nu_minus1 = nu.minus1_determined ? nu.nu_infinity(-1) : sol[col_minus1];
    cvec res = A.apply(sol);
    for (int i = 0; i < rows; ++i) res[i] -= b[i];
    out.residual = inf_norm(res);
    return out;
}

CBlock solve_c(const ConnectionConfig& config, const DeformationVector& alpha, double tol_sep) {
    const int r = config.r_inf();
    CBlock c;
    c.c_inf.assign(r, 0.0);
    // Unknowns ordered (c_{m-1}, ..., c_1) against the Toeplitz matrix of sheet differences.
    auto block = [&](const SheetPair& t, const SheetPair& a, int m) {
        cvec column, rhs;
        for (int row = 0; row < m - 1; ++row) {
            const int i = m - 1 - row;
            column.push_back(t[0][m - 1 - row] - t[1][m - 1 - row]);
            cplx v = 0.0;
            for (int k = i; k <= m - 1; ++k) {
                const int idx = m - 1 + i - k;
                v += (t[1][idx] * a[0][k] - t[0][idx] * a[1][k]) / static_cast<double>(k);
            }
            rhs.push_back(v);
        }
        cvec sol = lower_toeplitz_solve(column, rhs, tol_sep);
        cvec out(m, 0.0);
        for (int row = 0; row < m - 1; ++row) out[m - 1 - row] = sol[row];
        return out;
    };
    c.c_inf = block(config.t_inf, alpha.a_inf, r);
    for (int s = 0; s < config.n(); ++s) c.c_X.push_back(block(config.t_X[s], alpha.a_X[s], config.structure.r[s]));
    return c;
}

DeformationCoefficients solve_coefficients(const ConnectionConfig& config, const DarbouxState& state,
                                           const DeformationVector& alpha) {
    const NuBlock nu = solve_nu(config, alpha);
    const MuSolution mu = solve_mu(config, state, nu);
    const CBlock c = solve_c(config, alpha);
    DeformationCoefficients out;
    out.nu_inf = nu.nu_inf;
    out.nu_inf[0] = mu.nu_minus1;
    out.nu_inf[1] = mu.nu_zero;
    out.nu_X = nu.nu_X;
    out.mu = mu.mu;
    out.c_inf = c.c_inf;
    out.c_inf[0] = 0.5 * mu.nu_minus1;
    out.c_X = c.c_X;
    for (int j = 0; j < state.size(); ++j) out.rho.push_back(-mu.mu[j] * state.p[j]);
    return out;
}

LaxMatrix build_A_companion(const ConnectionConfig& config, const DarbouxState& state,
                            const DeformationCoefficients& coeffs, const IsospectralHamiltonians&,
                            const LaxMatrix& L) {
    const cplx hb = config.hbar;
    LaxMatrix A;
    A.gauge = Gauge::companion;
    RationalFunction a12(cvec{coeffs.nu_zero(), coeffs.nu_minus1()});
    for (int j = 0; j < state.size(); ++j) a12.add_pole_term(state.q[j], 1, coeffs.mu[j]);
    RationalFunction a11(coeffs.c_inf);
    for (int s = 0; s < config.n(); ++s)
        for (int k = 1; k < config.structure.r[s]; ++k) a11.add_pole_term(config.structure.X[s], k, coeffs.c_X[s][k]);
    for (int j = 0; j < state.size(); ++j) a11.add_pole_term(state.q[j], 1, coeffs.rho[j]);
    A.e11 = a11;
    A.e12 = a12;
    A.e21 = hb * differentiate(a11) + a12 * L.e21;
    A.e22 = hb * differentiate(a12) + a11 + a12 * L.e22;
    return A;
}

Mat2 tilde_gauge_factor(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H, cplx lambda) {
    const int r = config.r_inf();
    const cplx ell = config.t_inf[0][r - 1] * lambda + compute_eta0(config, state, &H);
    const cplx prod_q = node_product(state).evaluate(lambda);
    const cplx prod_X = pole_product(config).evaluate(lambda);
    const cplx Q = build_Q_polynomial(config, state).evaluate(lambda);
    return {1.0, 0.0, ell + Q / prod_q, prod_X / prod_q};
}

MatrixFunction build_A_tilde(const ConnectionConfig& config, const DarbouxState& state,
                             const DeformationCoefficients& coeffs, const IsospectralHamiltonians& H,
                             const DeformationVector& alpha) {
    const int r = config.r_inf();
    const int g = state.size();
    const int n = config.n();
    const cplx hb = config.hbar;
    const auto& X = config.structure.X;
    const auto& rs = config.structure.r;
    const EvolutionField field = evolution_field(config, state, coeffs, H);
    const LaxMatrix L = build_L_companion(config, state, H);
    const LaxMatrix A = build_A_companion(config, state, coeffs, H, L);

    // Q / prod(lambda - q) = sum_i w_i / (lambda - q_i) and hbar d/ds of the weights.
    cvec w(g), dw(g);
    for (int i = 0; i < g; ++i) {
        cplx num = 1.0, den = 1.0;
        for (int s = 0; s < n; ++s) num *= std::pow(state.q[i] - X[s], rs[s]);
        for (int j = 0; j < g; ++j)
            if (j != i) den *= state.q[i] - state.q[j];
        w[i] = -state.p[i] * num / den;
        cplx log_rate = 0.0;
        for (int s = 0; s < n; ++s)
            log_rate += static_cast<double>(rs[s]) * (field.dq[i] - hb * alpha.a_pos[s]) / (state.q[i] - X[s]);
        for (int j = 0; j < g; ++j)
            if (j != i) log_rate -= (field.dq[i] - field.dq[j]) / (state.q[i] - state.q[j]);
        dw[i] = -field.dp[i] * num / den + w[i] * log_rate;
    }

    cplx d_eta0;
    if (r >= 2) {
        cplx shift = 0.0, d_shift = 0.0;
        for (int j = 0; j < g; ++j) {
            shift += state.q[j];
            d_shift += field.dq[j];
        }
        for (int s = 0; s < n; ++s) {
            shift -= static_cast<double>(rs[s]) * X[s];
            d_shift -= hb * static_cast<double>(rs[s]) * alpha.a_pos[s];
        }
        d_eta0 = hb * alpha.a_inf[0][r - 2] + hb * alpha.a_inf[0][r - 1] * shift + config.t_inf[0][r - 1] * d_shift;
    } else {
        // eta0 depends on H here; take its derivative along the flow numerically.
        const double eps = 1e-6;
        auto eta_at = [&](double sgn) {
            ConnectionConfig c = advance_times(config, alpha, sgn * eps);
            DarbouxState st = state;
            for (int j = 0; j < g; ++j) {
                st.q[j] += sgn * eps * field.dq[j] / hb;
                st.p[j] += sgn * eps * field.dp[j] / hb;
            }
            const IsospectralHamiltonians Hs = solve_isospectral_H(c, st);
            return compute_eta0(c, st, &Hs);
        };
        d_eta0 = hb * (eta_at(1.0) - eta_at(-1.0)) / (2.0 * eps);
    }
    const cplx d_lead = hb * alpha.a_inf[0][r - 1];

    return [=](cplx lambda) {
        const Mat2 K = tilde_gauge_factor(config, state, H, lambda);
        cplx dk21 = d_lead * lambda + d_eta0;
        for (int i = 0; i < g; ++i) {
            const cplx u = 1.0 / (lambda - state.q[i]);
            dk21 += dw[i] * u + w[i] * field.dq[i] * u * u;
        }
        cplx log_rate = 0.0;
        for (int j = 0; j < g; ++j) log_rate += field.dq[j] / (lambda - state.q[j]);
        for (int s = 0; s < n; ++s) log_rate -= hb * static_cast<double>(rs[s]) * alpha.a_pos[s] / (lambda - X[s]);
        const Mat2 dK{0.0, 0.0, dk21, K.a22 * log_rate};
        const Mat2 Kinv = K.inverse();
        return K * A.evaluate(lambda) * Kinv + dK * Kinv;
    };
}

}  // namespace isomono
