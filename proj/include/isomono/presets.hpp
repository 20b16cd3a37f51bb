#pragma once

#include "isomono/time_reduction.hpp"

namespace isomono {

enum class PainleveId { P2, P3, P4, P4_JM, P5, P6, P2H2 };

const char* to_string(PainleveId id);
// Throws ValidationError("unknown preset id ...").
PainleveId painleve_id_from_string(const std::string& name);
std::vector<PainleveId> all_painleve_ids();

// Sheet-1 monodromy exponents; sheet 2 carries the negatives.
struct PainleveParameters {
    cplx theta_inf = 0.0;
    cvec theta_X;
    cplx hbar = 1.0;
};

int finite_pole_count(PainleveId id);
int iso_time_count(PainleveId id);

struct PainlevePreset {
    PainleveId id = PainleveId::P2;
    PainleveParameters params;
    cvec iso_times;
    ConnectionConfig config;
    std::vector<DeformationVector> directions;  // one per isomonodromic time
    DarbouxState state;

    // Path through the time space along one isomonodromic time.
    FlowSchedule schedule(int which = 0) const;
};

PainlevePreset painleve_preset(PainleveId id, const PainleveParameters& params, const cvec& iso_times,
                               const DarbouxState& initial);

// Hand-coded first-order systems hbar d(q,p)/dt for each preset, independent of the solver chain.
EvolutionField painleve_displayed_field(PainleveId id, const PainleveParameters& params, const cvec& iso_times,
                                        const DarbouxState& state, int which = 0);

// Value that hbar^2 q'' takes on a solution of the second-order equation. For P4 and P4_JM the
// variable is the zero of the Wronskian in the Jimbo-Miwa chart (q - t in the canonical chart).
// Throws PoleEvaluationError at the fixed singular points.
cplx painleve_rhs_oracle(PainleveId id, cplx q, cplx dq, cplx t, const PainleveParameters& params);

// Max deviation between the polynomial (Q1, Q2, P1, P2) flows of the second P2-hierarchy member
// and the chain rule applied to the solver's field, over both isomonodromic times.
double p2h2_polynomial_residual(const PainleveParameters& params, const cvec& iso_times, const DarbouxState& state);

struct FuchsianPreset {
    ConnectionConfig config;
    std::vector<DeformationVector> directions;  // d/dX_s for s = 3..n
    cvec positions;
};

// n >= 3 simple poles at 0, 1 and the given positions; theta_X has n entries.
FuchsianPreset fuchsian_preset(int n, cplx theta_inf, const cvec& theta_X, const cvec& positions, cplx hbar = 1.0);

}  // namespace isomono
