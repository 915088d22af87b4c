#pragma once

#include "gpq/nehari.hpp"

namespace gpq {

/// Dirichlet problem on the potential wells: free unknowns are u on Omega_a
/// and v on Omega_b, zero everywhere else (boundary values included).
struct LimitProblem {
    Wells wl;
    EnergyContext ctx;  // LimitWells mode
};

/// Builds the wells from the potentials and wraps them in a limit-mode
/// energy context. Throws EmptyWell/DisconnectedWell per the well rules.
LimitProblem make_limit_problem(const WeightedGraph& g, const PotentialPair& pot,
                                const ExponentConfig& cfg, const Nonlinearity& nl);

// Ground state of J_Omega over N_Omega by the same reduced-functional
// descent, restricted to the well-supported subspace. With at most 6 free
// reals a dense direction-grid scan seeds extra warm starts to guard against
// local minima.
GroundState solve_limit_ground_state(const LimitProblem& lp, const GrowthEnvelope& env,
                                     const SolveOptions& opts);

}  // namespace gpq
