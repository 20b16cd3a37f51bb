#pragma once

#include "isomono/deformation.hpp"

#include <ostream>

namespace isomono {

// hbar times the derivative of (q, p) along the deformation.
struct EvolutionField {
    cvec dq;
    cvec dp;
};

cplx hamiltonian_value(const ConnectionConfig& config, const DarbouxState& state,
                       const DeformationCoefficients& coeffs, const IsospectralHamiltonians& H);

EvolutionField evolution_field(const ConnectionConfig& config, const DarbouxState& state,
                               const DeformationCoefficients& coeffs, const IsospectralHamiltonians& H);

// Solves H and the coefficients, then evaluates the field.
EvolutionField evolution_field(const ConnectionConfig& config, const DarbouxState& state,
                               const DeformationVector& alpha);
// Solves H and the coefficients, then evaluates the Hamiltonian.
cplx hamiltonian_value(const ConnectionConfig& config, const DarbouxState& state, const DeformationVector& alpha);

// Configuration along a one-parameter family of times; the deformation direction is the
// derivative of the times with respect to the flow parameter.
struct FlowSchedule {
    std::function<ConnectionConfig(cplx)> config_at;
    std::function<DeformationVector(cplx)> direction_at;
};

// Straight line t(s) = t0 + (s - s0) alpha through the raw time coordinates.
FlowSchedule linear_schedule(const ConnectionConfig& config, const DeformationVector& alpha, cplx s0);

enum class Integrator { rk4, rk45 };

struct StepControl {
    Integrator method = Integrator::rk4;
    double step = 1e-3;
    double tolerance = 1e-9;   // rk45 local error tolerance
    double min_step = 1e-12;
    double tol_sep = 1e-8;
};

struct TrajectoryPoint {
    cplx time;
    DarbouxState state;
    cplx hamiltonian;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    bool completed = true;
    std::string stop_reason;
};

// Integrates d(q,p)/ds = field / hbar along the real segment from s_begin to s_end.
Trajectory integrate_flow(const FlowSchedule& schedule, const DarbouxState& initial, cplx s_begin, cplx s_end,
                          const StepControl& control = {});

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace isomono
