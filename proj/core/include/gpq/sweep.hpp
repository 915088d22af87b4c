#pragma once

#include <string>

#include "gpq/limit.hpp"

namespace gpq {

/// One full problem instance: graph, potentials, exponents, nonlinearity and
/// its growth envelope.
struct ProblemInstance {
    const WeightedGraph* graph = nullptr;
    const PotentialPair* pot = nullptr;
    ExponentConfig cfg;
    const Nonlinearity* nl = nullptr;
    GrowthEnvelope env;
};

struct SweepRow {
    double lambda = 0.0;
    double m_lambda = 0.0;
    double gap = 0.0;        // m_omega - m_lambda
    double penalty_u = 0.0;  // lambda int a |u|^p dmu
    double penalty_v = 0.0;
    double tail_u = 0.0;  // mass sum mu |u|^p outside Omega_a
    double tail_v = 0.0;
    double mass_u = 0.0;  // total mass, for relative tails
    double mass_v = 0.0;
    double sobolev_drift = 0.0;  // |W^{1,p}-energy drift| + q analog
    double kkt_residual = 0.0;
    bool certified = false;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    double m_omega = 0.0;
    GroundState limit;
    std::vector<SweepRow> rows;
};

// Solves the limit problem once, then the full-graph problem at each lambda
// in ascending order, warm-starting from the previous state plus fresh
// restarts. Solver failures mark the row failed without aborting the sweep.
SweepResult run_sweep(const ProblemInstance& inst, const std::vector<double>& lambdas,
                      const SolveOptions& opts);

struct ConvergenceReport {
    struct Metric {
        std::string name;
        double value = 0.0;
        double tol = 0.0;
        bool pass = false;
    };
    std::vector<Metric> metrics;
    bool pass = false;
};

// Asserts gap >= -1e-10 on every certified row and, at the largest lambda,
// gap / m_omega, penalties / m_omega and relative tails each <= tol.
// Requires at least 3 lambda values.
ConvergenceReport convergence_report(const SweepResult& sr, double tol);

}  // namespace gpq
