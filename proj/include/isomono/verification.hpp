#pragma once

#include "isomono/time_reduction.hpp"

#include <cstdint>
#include <random>

#include <json.hpp>

namespace isomono {

struct CheckItem {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::string name;
    std::vector<CheckItem> items;

    void add(std::string item, double residual, double tolerance);
    bool passed() const;
    double worst_residual() const;
};

struct CheckTolerances {
    double zero_curvature = 1e-5;
    double hamiltonianity = 1e-6;
    double trivial_field = 1e-9;
    double trivial_times = 1e-7;
    double trivial_invariance = 1e-6;
    double residue = 1e-9;
    double reduction = 1e-10;
    double round_trip = 1e-10;
    double det_V = 1e-8;

    // Every tolerance replaced by the same value.
    static CheckTolerances uniform(double tol);
};

// Symmetric finite difference of L along the flow versus [A, L] + hbar dA/dlambda.
CheckReport check_zero_curvature(const ConnectionConfig& config, const DarbouxState& state,
                                 const DeformationVector& alpha, const cvec& lambdas, double eps = 1e-6,
                                 double tol = 1e-5);

// Finite-difference gradient of the Hamiltonian versus the evolution field. A nonzero perturbation
// is added to H_{X_1,1}, or to the highest H_inf entry when n = 0, in the field only.
CheckReport check_hamiltonianity(const ConnectionConfig& config, const DarbouxState& state,
                                 const DeformationVector& alpha, double eps = 1e-6, double tol = 1e-6,
                                 double H_perturbation = 0.0);

// Field identities of the trivial directions and the T1/T2 derivative identities.
CheckReport check_trivial_identities(const ConnectionConfig& config, const DarbouxState& state, double eps = 1e-6,
                                     double tol_field = 1e-9, double tol_times = 1e-7);

// Shifted Darboux coordinates stay constant along each trivial flow over the given span.
CheckReport check_trivial_invariance(const ConnectionConfig& config, const DarbouxState& state, double span = 0.1,
                                     double tol = 1e-6);

// H from the node system versus residues of (1/2) Tr L_c^2. Throws ValidationError if not canonical.
CheckReport check_residue_crosscheck(const ConnectionConfig& config, const DarbouxState& state, double tol = 1e-9);

// Full Hamiltonian, truncated Hamiltonian and Toeplitz combination for every isomonodromic time.
CheckReport check_reduction_paths(const ConnectionConfig& config, const DarbouxState& state, double tol = 1e-10);

// forward(inverse(chart)) and inverse(forward(config)) identities.
CheckReport check_chart_round_trip(const ConnectionConfig& config, double tol = 1e-10);

// LU determinant of the node matrix versus the closed-form product (r_inf >= 3).
CheckReport check_det_V(const ConnectionConfig& config, const DarbouxState& state, double tol = 1e-8);

// Random sampling used by the suite and the tests.
struct SampleSpec {
    PoleStructure structure;  // positions are filled by the sampler
};

using SuiteRng = std::mt19937_64;

SuiteRng suite_rng(std::uint64_t seed, std::uint64_t index);
// Structure for the given case with 1 <= g <= max_genus.
PoleStructure sample_structure(SuiteRng& rng, ChartCase chart_case, int max_genus = 6);
ConnectionConfig sample_config(SuiteRng& rng, const PoleStructure& orders);
ConnectionConfig sample_canonical_config(SuiteRng& rng, const PoleStructure& orders);
// Nodes in 0.5 <= |q| <= 2, pairwise and pole separation >= 0.3.
DarbouxState sample_state(SuiteRng& rng, const ConnectionConfig& config);
DeformationVector sample_direction(SuiteRng& rng, const ConnectionConfig& config);
// Points with |lambda| <= 3 kept 0.3 away from poles and nodes.
cvec sample_lambdas(SuiteRng& rng, const ConnectionConfig& config, const DarbouxState& state, int count);

struct SuiteOptions {
    std::uint64_t seed = 0;
    int count = 20;                        // configurations, cycling through the four cases
    std::vector<PoleStructure> structures; // when non-empty, cycled instead of sampled
    int max_genus = 6;
    int lambdas = 10;
    double fd_eps = 1e-6;
    double invariance_span = 0.1;
    CheckTolerances tol;
    bool parallel = true;
};

struct ConfigResult {
    int index = 0;
    ChartCase chart_case = ChartCase::r_inf_at_least_3;
    PoleStructure structure;
    int genus = 0;
    std::vector<CheckReport> checks;
    std::string error;  // set when a check threw

    bool passed() const;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<ConfigResult> configs;
    double seconds = 0.0;

    bool passed() const;
    int failures() const;
};

// Hamiltonianity, zero curvature, trivial identities and invariance, chart round trip and det V
// (r_inf >= 3) on one configuration, with the options' step, span and tolerances.
std::vector<CheckReport> check_configuration(const ConnectionConfig& config, const DarbouxState& state,
                                             const DeformationVector& alpha, const cvec& lambdas,
                                             const SuiteOptions& options);

// Deterministic under a fixed seed; the parallel and serial paths give identical reports.
SuiteReport run_suite(const SuiteOptions& options);

nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const SuiteReport& report);

}  // namespace isomono
