#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpq/energy.hpp"

namespace gpq {

struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidEnvelope : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unique positive root of the fibering derivative along a direction.
struct FiberResult {
    double t0 = 0.0;
    double g_at_t0 = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

/// g(t) = J(t u, t v) along the ray through dir.
double fiber_g(const EnergyContext& ctx, const PairState& dir, double t);

// g'(t) = t^{p-1}||u||^p + t^{q-1}||v||^q - int [F_t(x,tu,tv)u + F_s(x,tu,tv)v]
double fiber_g_prime(const EnergyContext& ctx, const PairState& dir, double t);

// Bracket expansion (doubling/halving from t = 1) followed by bisection to
// machine resolution. Throws BracketFailure if no sign change of g' occurs
// within [1e-12, 1e12].
FiberResult project_to_nehari(const EnergyContext& ctx, const PairState& dir);

/// Closed-form certificates: level lower bound eta, norm lower bound xi,
/// norm upper bound L.
struct BoundsReport {
    double eta = 0.0;
    double rho = 0.0;  // radius at which eta was attained
    double xi = 0.0;
    double upper_L = 0.0;
};

// Evaluates the eta(rho), xi_1..xi_4 and L formulas with the embedding
// constants of the context's space (starred constants in limit mode); eta is
// maximized over a fine deterministic rho grid inside its admissible
// interval. m_ref is the attained least energy. Throws InvalidEnvelope when
// ||C3|| >= 1, a bracket numerator is nonpositive, or 1/beta <= (1+rho)/alpha.
BoundsReport compute_bounds(const EnergyContext& ctx, const GrowthEnvelope& env,
                            double m_ref);

struct SolveOptions {
    int restarts = 16;
    int max_iters = 5000;
    double tol_k = 1e-10;
    double tol_res = 1e-8;
    std::uint64_t seed = 0;
    std::vector<PairState> warm_starts;  // extra start directions (sweeps)
};

struct GroundState {
    PairState state;
    double energy = 0.0;
    double lambda = 1.0;
    double nehari_residual = 0.0;  // |k(state)|
    double kkt_residual = 0.0;     // scaled max-abs Euler-Lagrange defect
    double k_prime = 0.0;          // <k'(state),(state)>, must be < 0
    BoundsReport bounds;
    int restarts_used = 0;
    bool certified = false;
    /// (energy, ||u||^p, ||v||^q) after each accepted step of the winner
    std::vector<std::array<double, 3>> descent_trace;
};

// Minimizes the reduced functional dir -> J(t0(dir) dir) by projected
// descent with Armijo backtracking, multi-started from seeded random
// directions, well indicators and opts.warm_starts; best energy wins, ties
// broken by start index. A stalled run is returned with certified = false; a
// certified state violating the xi/L sandwich throws BoundViolation.
GroundState solve_ground_state(const EnergyContext& ctx, const GrowthEnvelope& env,
                               const SolveOptions& opts);

}  // namespace gpq
