#pragma once

#include "isomono/rational.hpp"

#include <array>
#include <string>

namespace isomono {

struct PoleStructure {
    int r_inf = 1;
    std::vector<int> r;  // finite pole orders
    cvec X;              // finite pole positions

    int n() const { return static_cast<int>(r.size()); }
    int total_finite_order() const;
};

// Times are indexed by k; k = 0 holds the monodromy exponent.
using SheetPair = std::array<cvec, 2>;

struct ConnectionConfig {
    PoleStructure structure;
    SheetPair t_inf;              // t_inf[i][k], k = 0..r_inf-1
    std::vector<SheetPair> t_X;   // t_X[s][i][k], k = 0..r_s-1
    cplx hbar = 1.0;
    bool enforce_residue_sum = true;

    int genus() const;
    int n() const { return structure.n(); }
    int r_inf() const { return structure.r_inf; }
    // Sheet difference t^(1) - t^(2) at infinity / at X_s.
    cplx delta_inf(int k) const { return t_inf[0][k] - t_inf[1][k]; }
    cplx delta_X(int s, int k) const { return t_X[s][0][k] - t_X[s][1][k]; }
};

struct DarbouxState {
    cvec q;
    cvec p;
    int size() const { return static_cast<int>(q.size()); }
};

// alpha coefficients of a deformation direction. Slot k = 0 of each sheet list is unused
// and stays zero since monodromies are not deformed.
struct DeformationVector {
    SheetPair a_inf;
    std::vector<SheetPair> a_X;
    cvec a_pos;

    static DeformationVector zero(const ConnectionConfig& config);
    int dimension() const;
    DeformationVector& operator+=(const DeformationVector& o);
    DeformationVector& operator*=(cplx s);
};

DeformationVector operator+(DeformationVector a, const DeformationVector& b);
DeformationVector operator*(cplx s, DeformationVector a);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

int genus(const PoleStructure& structure);
ValidationReport validate(const ConnectionConfig& config, const Tolerances& tol = {});
ValidationReport validate_state(const ConnectionConfig& config, const DarbouxState& state,
                                const Tolerances& tol = {});
// Throws ValidationError carrying every failure.
void require_valid(const ConnectionConfig& config, const DarbouxState& state, const Tolerances& tol = {});

RationalFunction compute_P1(const ConnectionConfig& config);
RationalFunction compute_P2_tilde(const ConnectionConfig& config);

// Sheet-product coefficient of lambda^j at infinity for j = r_inf-3..2r_inf-4 (negative j give 0).
cplx p2_coefficient_at_infinity(const ConnectionConfig& config, int j);
// Sheet-product coefficient of (lambda - X_s)^{-j} for j = r_s+1..2r_s.
cplx p2_coefficient_at_pole(const ConnectionConfig& config, int s, int j);

// prod_s (lambda - X_s)^{r_s} and prod_j (lambda - q_j) as polynomials.
RationalFunction pole_product(const ConnectionConfig& config);
RationalFunction node_product(const DarbouxState& state);

// Times and pole positions moved by eps * alpha.
ConnectionConfig advance_times(const ConnectionConfig& config, const DeformationVector& alpha, cplx eps);

// Swaps sheets 1 and 2 in every time list.
ConnectionConfig swap_sheets(const ConnectionConfig& config);

}  // namespace isomono
