#pragma once

#include "isomono/lax.hpp"
#include "isomono/linalg.hpp"

#include <functional>

namespace isomono {

struct NuBlock {
    cvec nu_inf;               // nu_inf[i+1] = nu_{inf,i}, i = -1..max(0, r_inf-3)
    std::vector<cvec> nu_X;    // nu_X[s][i] = nu_{X_s,i}, i = 0..r_s-1
    bool minus1_determined = true;
    bool zero_determined = true;

    cplx nu_infinity(int i) const { return nu_inf[i + 1]; }
};

struct DeformationCoefficients {
    cvec nu_inf;               // nu_{inf,-1..}, index shifted by one
    std::vector<cvec> nu_X;    // nu_{X_s,0..r_s-1}
    cvec mu;
    cvec c_inf;                // c_{inf,0..r_inf-1}
    std::vector<cvec> c_X;     // c_X[s][k], k = 1..r_s-1 (slot 0 unused)
    cvec rho;

    cplx nu_infinity(int i) const { return nu_inf[i + 1]; }
    cplx nu_minus1() const { return nu_inf[0]; }
    cplx nu_zero() const { return nu_inf[1]; }
};

struct CBlock {
    cvec c_inf;                // slots 1..r_inf-1 filled; slot 0 set once nu_{inf,-1} is known
    std::vector<cvec> c_X;
};

NuBlock solve_nu(const ConnectionConfig& config, const DeformationVector& alpha, double tol_sep = 1e-8);
// Direct recursions for the same coefficients, kept as an independent cross-check.
NuBlock solve_nu_recursive(const ConnectionConfig& config, const DeformationVector& alpha);

struct MuSolution {
    cvec mu;
    cplx nu_minus1 = 0.0;
    cplx nu_zero = 0.0;
    double residual = 0.0;   // max-norm residual of the square system
};

// Rows [V_inf; V_1; ...; V_n]; for r_inf <= 2 the undetermined nu_{inf,*} become extra unknowns.
MuSolution solve_mu(const ConnectionConfig& config, const DarbouxState& state, const NuBlock& nu);
// The g x g matrix [V_inf; V_1; ...] (only square when r_inf >= 3).
ComplexMatrix assemble_V(const ConnectionConfig& config, const DarbouxState& state);
// Closed-form determinant of the node matrix.
cplx V_determinant_closed_form(const ConnectionConfig& config, const DarbouxState& state);

CBlock solve_c(const ConnectionConfig& config, const DeformationVector& alpha, double tol_sep = 1e-8);

DeformationCoefficients solve_coefficients(const ConnectionConfig& config, const DarbouxState& state,
                                           const DeformationVector& alpha);

LaxMatrix build_A_companion(const ConnectionConfig& config, const DarbouxState& state,
                            const DeformationCoefficients& coeffs, const IsospectralHamiltonians& H,
                            const LaxMatrix& L);

// Tilde-gauge auxiliary matrix, evaluated pointwise in lambda.
using MatrixFunction = std::function<Mat2(cplx)>;
MatrixFunction build_A_tilde(const ConnectionConfig& config, const DarbouxState& state,
                             const DeformationCoefficients& coeffs, const IsospectralHamiltonians& H,
                             const DeformationVector& alpha);

// Gauge factor K = G1 J with Psi_tilde = K Psi, evaluated at lambda.
Mat2 tilde_gauge_factor(const ConnectionConfig& config, const DarbouxState& state,
                        const IsospectralHamiltonians& H, cplx lambda);

}  // namespace isomono
