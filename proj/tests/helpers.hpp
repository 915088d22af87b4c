#pragma once

#include <cstdlib>
#include <random>

#include "gpq/sweep.hpp"

namespace gpq::testing {

inline WeightedGraph single_vertex() {
    return WeightedGraph({{"v00", 1.0}}, {});
}

inline PotentialPair zero_pot(const WeightedGraph& g) {
    return {VertexFunction(g.size(), 0.0), VertexFunction(g.size(), 0.0), 0.0};
}

inline ExponentConfig quartic_cfg() {
    // p = q = 2, quartic growth, quintic envelope; valid per violations()
    return ExponentConfig{2.0, 2.0, 4.0, 0.1, 5.0, 5.0};
}

inline VertexFunction random_fn(const WeightedGraph& g, std::mt19937_64& rng,
                                double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    VertexFunction f(g.size());
    for (double& v : f) v = uni(rng);
    return f;
}

inline PairState random_state(const WeightedGraph& g, std::mt19937_64& rng) {
    return {random_fn(g, rng), random_fn(g, rng)};
}

/// 12-vertex path reference instance: wells a = 0 on {4,5,6}, b = 0 on
/// {5,6,7}, potentials 1 + distance to the well elsewhere.
struct ReferenceInstance {
    WeightedGraph g = WeightedGraph::path(12);
    PotentialPair pot;
    ExponentConfig cfg{2.0, 3.0, 4.0, 0.1, 5.0, 5.0};
    RemarkExample nl{g, cfg.alpha, cfg.beta(), 0};
    GrowthEnvelope env = nl.envelope(g);

    ReferenceInstance() {
        pot.a.assign(12, 0.0);
        pot.b.assign(12, 0.0);
        for (int x = 0; x < 12; ++x) {
            if (x < 4 || x > 6) pot.a[x] = 1.0 + std::min(std::abs(x - 4), std::abs(x - 6));
            if (x < 5 || x > 7) pot.b[x] = 1.0 + std::min(std::abs(x - 5), std::abs(x - 7));
        }
    }

    ProblemInstance instance() const { return {&g, &pot, cfg, &nl, env}; }
};

}  // namespace gpq::testing
