#pragma once

#include <memory>
#include <string>

#include "gpq/sweep.hpp"

namespace gpq {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphData {
    std::unique_ptr<WeightedGraph> graph;
    PotentialPair pot;
};

// Graph JSON: {"vertices":[{"id","mu","a","b"}...], "edges":[{"x","y","w"}...]}
// Rejects nonpositive mu, negative potentials, duplicate ids/edges, self-loops.
GraphData load_graph(const std::string& path);

/// A fully loaded experiment: everything run_sweep needs plus run settings.
struct Experiment {
    std::unique_ptr<WeightedGraph> graph;
    PotentialPair pot;
    ExponentConfig cfg;
    std::unique_ptr<Nonlinearity> nl;
    GrowthEnvelope env;
    SolveOptions opts;
    std::vector<double> lambdas;
    std::string out_dir;

    ProblemInstance instance() const {
        return {graph.get(), &pot, cfg, nl.get(), env};
    }
};

// Loads the experiment config (graph path resolved relative to the config
// file) and runs all cross-field validations; throws ConfigError naming the
// first violated assumption.
Experiment load_experiment(const std::string& config_path);

/// ground_state.json payload: per-vertex values keyed by id, energy,
/// residuals, bounds, seed.
std::string ground_state_json(const WeightedGraph& g, const GroundState& gs,
                              std::uint64_t seed);

/// CSV with the SweepRow columns, '.' decimal separator, shortest
/// round-trip doubles.
std::string sweep_csv(const SweepResult& sr);

/// {"m_omega":..., "seed":..., "pass_flags":{...}}
std::string sweep_summary_json(const SweepResult& sr, const ConvergenceReport& rep,
                               std::uint64_t seed);

/// Shortest decimal string that round-trips the binary64 value.
std::string format_double(double v);

}  // namespace gpq
