#pragma once

#include "isomono/connection.hpp"

#include <array>
#include <utility>

namespace isomono {

struct IsospectralHamiltonians {
    cvec H_inf;              // H_{inf,0..r_inf-4}
    std::vector<cvec> H_X;   // H_X[s][j-1] = H_{X_s,j}, j = 1..r_s
};

struct Mat2 {
    cplx a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(cplx s) const;
    cplx trace() const { return a11 + a22; }
    cplx det() const { return a11 * a22 - a12 * a21; }
    double max_abs() const;
    Mat2 inverse() const;
};

enum class Gauge { companion, check, tilde, c };

struct LaxMatrix {
    RationalFunction e11, e12, e21, e22;
    Gauge gauge = Gauge::companion;

    Mat2 evaluate(cplx lambda, double tol_sep = 1e-8) const;
};

RationalFunction build_Q_polynomial(const ConnectionConfig& config, const DarbouxState& state,
                                    double tol_sep = 1e-8);

// r_inf >= 2 uses the closed form; r_inf = 1 needs H.
cplx compute_eta0(const ConnectionConfig& config, const DarbouxState& state,
                  const IsospectralHamiltonians* H = nullptr);

IsospectralHamiltonians solve_isospectral_H(const ConnectionConfig& config, const DarbouxState& state);

// Right-hand side of the node equations for H, one entry per node.
cvec isospectral_rhs(const ConnectionConfig& config, const DarbouxState& state);

LaxMatrix build_L_companion(const ConnectionConfig& config, const DarbouxState& state,
                            const IsospectralHamiltonians& H);
LaxMatrix build_L_check(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H);
LaxMatrix build_L_tilde(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H);
LaxMatrix build_L_c(const ConnectionConfig& config, const DarbouxState& state,
                    const IsospectralHamiltonians& H);

// Tilde-gauge matrix from the check gauge with a given eta0.
LaxMatrix tilde_from_check(const ConnectionConfig& config, const LaxMatrix& check, cplx eta0);

// hbar -> 0 limit of (Tr L, det L).
std::pair<RationalFunction, RationalFunction> classical_spectral_curve(const ConnectionConfig& config,
                                                                       const DarbouxState& state);
// Same curve computed from the tilde gauge, for gauge-independence checks.
std::pair<RationalFunction, RationalFunction> classical_spectral_curve_tilde(const ConnectionConfig& config,
                                                                             const DarbouxState& state);

cplx wronskian_shape(const ConnectionConfig& config, const DarbouxState& state, cplx lambda,
                     double tol_sep = 1e-8);

// H read back from residues of (1/2) Tr(L_c^2), with Tr(L_c^2) formed by rational products.
IsospectralHamiltonians hamiltonians_from_trace_residues(const ConnectionConfig& config,
                                                         const DarbouxState& state,
                                                         const IsospectralHamiltonians& H);

// eta0 fixed by requiring the tilde-gauge (2,1) entry to have no polynomial part (r_inf = 1 only).
cplx eta0_from_normalization(const ConnectionConfig& config, const DarbouxState& state,
                             const IsospectralHamiltonians& H);

}  // namespace isomono
