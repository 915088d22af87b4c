#pragma once

#include <stdexcept>

#include "gpq/calculus.hpp"
#include "gpq/graph.hpp"
#include "gpq/nonlinearity.hpp"

namespace gpq {

/// A limit-mode state or test direction has support outside its well.
struct DomainViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything needed to evaluate the energy: either the full-graph functional
// J_lambda or the limit functional J_Omega on the potential wells. Limit-mode
// states live on the full vertex set with hard zeros off the wells.
struct EnergyContext {
    enum class Mode { FullGraph, LimitWells };

    const WeightedGraph* graph = nullptr;
    const PotentialPair* pot = nullptr;
    ExponentConfig cfg;
    const Nonlinearity* nl = nullptr;
    double lambda = 1.0;
    Mode mode = Mode::FullGraph;

    Wells wl;                 // LimitWells only
    VertexSubset closure_a;   // closure of Omega_a
    VertexSubset closure_b;
    VertexSubset f_domain;    // Omega_a union Omega_b

    static EnergyContext full_graph(const WeightedGraph& g, const PotentialPair& pot,
                                    const ExponentConfig& cfg, const Nonlinearity& nl,
                                    double lambda);
    static EnergyContext limit_wells(const WeightedGraph& g, const PotentialPair& pot,
                                     const ExponentConfig& cfg, const Nonlinearity& nl,
                                     const Wells& wl);
};

/// Throws DomainViolation in LimitWells mode if u (resp. v) is nonzero
/// outside Omega_a (resp. Omega_b). No-op in FullGraph mode.
void check_support(const EnergyContext& ctx, const PairState& state);

struct NormPows {
    double up = 0.0;  // ||u||^p in W_lambda(a) or W_{Omega_a}
    double vq = 0.0;  // ||v||^q in W_lambda(b) or W_{Omega_b}
};

NormPows state_norm_pows(const EnergyContext& ctx, const PairState& state);

/// Product-space norm ||u|| + ||v|| in the mode's spaces.
double pair_norm(const EnergyContext& ctx, const PairState& state);

/// J_lambda or J_Omega at the state.
double j_eval(const EnergyContext& ctx, const PairState& state);

/// Gateaux derivative <J'(state), direction>.
double j_gateaux(const EnergyContext& ctx, const PairState& state,
                 const PairState& direction);

/// k(u,v) = <J'(u,v),(u,v)> = ||u||^p + ||v||^q - int (F_u u + F_v v).
double nehari_k(const EnergyContext& ctx, const PairState& state);

// <k'(u,v),(u,v)> = p||u||^p + q||v||^q
//   - int [F_uu u^2 + F_vv v^2 + 2 F_uv uv + F_u u + F_v v];
// strictly negative on the Nehari manifold under (F4).
double k_prime_pairing(const EnergyContext& ctx, const PairState& state);

struct Residual {
    VertexFunction ru;  // -Delta_p u + (lambda a + 1)|u|^{p-2}u - F_u, per vertex
    VertexFunction rv;
    double max_abs = 0.0;
    double l2_weighted = 0.0;  // sqrt(int (ru^2 + rv^2) dmu)
};

/// Pointwise Euler-Lagrange defect. LimitWells mode evaluates only at well
/// vertices (with unit zeroth-order coefficient) and leaves zeros elsewhere.
Residual residual(const EnergyContext& ctx, const PairState& state);

/// max_abs scaled by 1/(1 + ||state||_inf); the dimensionless certificate.
double kkt_residual(const Residual& res, const PairState& state);

// Euclidean gradient of J for descent: mu(x) times the residual, but with the
// p-Laplacian factor smoothed to (Gamma + eps)^{(p-2)/2} so p < 2 stays
// finite at flat points. Zero off the wells in LimitWells mode.
PairState euclidean_gradient(const EnergyContext& ctx, const PairState& state,
                             double eps_reg = 1e-12);

}  // namespace gpq
