#pragma once

#include "isomono/flow.hpp"

#include <map>

namespace isomono {

enum class ChartCase { r_inf_at_least_3, r_inf_2, r_inf_1_multi, r_inf_1_single };

const char* to_string(ChartCase c);
ChartCase chart_case_of(const PoleStructure& structure);

struct IsoTimeId {
    enum class Kind { infinity, pole, position };
    Kind kind = Kind::infinity;
    int s = -1;  // pole index for pole/position kinds
    int k = 0;   // order index for infinity/pole kinds

    std::string name() const;
    auto operator<=>(const IsoTimeId&) const = default;
};

// Trivial and isomonodromic coordinates on the deformation space.
struct TimeChart {
    ChartCase chart_case = ChartCase::r_inf_at_least_3;
    PoleStructure structure;  // positions are not used; they are rebuilt from X_tilde
    cplx T1 = 0.0;
    cplx T2 = 1.0;
    int branch = 0;  // T2 = principal root times exp(2 pi i branch / m)

    cvec T_inf;               // sheet sums at infinity, k = 0..r_inf-1
    std::vector<cvec> T_X;    // sheet sums at X_s, k = 0..r_s-1
    cplx theta_inf = 0.0;     // t^(1)_0 - t^(2)_0 at infinity
    cvec theta_X;             // t^(1)_0 - t^(2)_0 at X_s

    cvec tau_inf;             // tau_{inf,j}, slot j = 1..r_inf-3 (slot 0 unused)
    std::vector<cvec> tau_X;  // tau_{X_s,k}, slot k = 1..r_s-1 (slot 0 unused)
    cvec X_tilde;             // T2 X_s + T1 for every pole; only some are isomonodromic

    std::vector<IsoTimeId> iso_ids() const;
    cplx iso_value(const IsoTimeId& id) const;
    void set_iso_value(const IsoTimeId& id, cplx value);
    cvec iso_values() const;
    int trivial_count() const;  // excludes the monodromy sums
};

// Principal branch unless a branch index is given.
TimeChart forward_time_map(const ConnectionConfig& config, int branch = 0);
ConnectionConfig inverse_time_map(const TimeChart& chart, cplx hbar = 1.0);

// alpha such that L_alpha = hbar d/d tau with every other chart coordinate fixed.
DeformationVector dual_derivative_coefficients(const TimeChart& chart, const IsoTimeId& id);

DarbouxState shift_coordinates(const ConnectionConfig& config, const DarbouxState& state);
DarbouxState unshift_coordinates(const ConnectionConfig& config, const DarbouxState& shifted);

bool is_canonical(const ConnectionConfig& config, double tol = 1e-10);

// Toeplitz combinations of the isospectral Hamiltonians under canonical trivial times.
std::map<IsoTimeId, cplx> reduced_hamiltonians(const ConnectionConfig& config, const DarbouxState& state,
                                               const IsospectralHamiltonians& H);

// Truncated Hamiltonian that keeps only the nu and position terms.
cplx reduced_hamiltonian_direct(const ConnectionConfig& config, const DarbouxState& state,
                                const DeformationVector& alpha, const IsospectralHamiltonians& H);

// Canonical trivial times with given isomonodromic times (chart order) and sheet-1 monodromies.
ConnectionConfig specialize_canonical(const PoleStructure& orders, const cvec& iso_times, cplx theta_inf,
                                      const cvec& theta_X, cplx hbar = 1.0);

// Named trivial directions.
DeformationVector trivial_v_inf(const ConnectionConfig& config, int k);
DeformationVector trivial_v_X(const ConnectionConfig& config, int s, int k);
DeformationVector trivial_u_inf(const ConnectionConfig& config, int k);
DeformationVector trivial_u_X(const ConnectionConfig& config, int s, int k);
DeformationVector trivial_a(const ConnectionConfig& config);
DeformationVector trivial_b(const ConnectionConfig& config);
DeformationVector trivial_w(const ConnectionConfig& config, int s);

enum class TrivialFlow { a, b, v_inf, v_X };

// Exact time path of a trivial flow starting from config at s = 0.
FlowSchedule trivial_flow_schedule(const ConnectionConfig& config, TrivialFlow kind, int s_index = 0, int k = 1);

// Moves one isomonodromic time while every other chart coordinate stays fixed.
FlowSchedule iso_time_schedule(const TimeChart& chart, const IsoTimeId& id, cplx hbar);

}  // namespace isomono
