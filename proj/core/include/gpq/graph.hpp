#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gpq {

/// Real-valued function on the vertices of a graph, indexed by dense
/// vertex index (see WeightedGraph::index_of).
using VertexFunction = std::vector<double>;

struct PairState {
    VertexFunction u;
    VertexFunction v;
};

/// Finite graph with symmetric positive edge weights and a uniformly
/// positive vertex measure. Immutable after construction.
class WeightedGraph {
public:
    struct Edge {
        int x;
        int y;
        double w;
    };

    // vertices: (id, mu) pairs; edges reference ids. Throws on duplicate ids,
    // self-loops, duplicate edges, nonpositive weights or measures.
    WeightedGraph(std::vector<std::pair<std::string, double>> vertices,
                  const std::vector<std::tuple<std::string, std::string, double>>& edges);

    int size() const { return static_cast<int>(mu_.size()); }
    double mu(int x) const { return mu_[x]; }
    double mu_min() const { return mu_min_; }
    const std::string& id_of(int x) const { return ids_[x]; }
    int index_of(const std::string& id) const;
    const std::vector<Edge>& edges() const { return edges_; }

    /// Iteration over neighbors of x: indices into neighbor/weight arrays.
    struct NeighborRange {
        const int* vtx_begin;
        const double* w_begin;
        int count;
    };
    NeighborRange neighbors(int x) const {
        return {adj_vtx_.data() + adj_off_[x], adj_w_.data() + adj_off_[x],
                adj_off_[x + 1] - adj_off_[x]};
    }

    double weight_sum(int x) const;
    bool connected() const;

    /// BFS hop distance from base; unreachable vertices get -1.
    std::vector<int> distances_from(int base) const;

    // simple built-in generators used by tests and reference instances
    static WeightedGraph path(int n, double w = 1.0, double mu = 1.0);
    static WeightedGraph cycle(int n, double w = 1.0, double mu = 1.0);
    static WeightedGraph grid(int rows, int cols, double w = 1.0, double mu = 1.0);

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<double> mu_;
    std::vector<Edge> edges_;
    std::vector<int> adj_off_;
    std::vector<int> adj_vtx_;
    std::vector<double> adj_w_;
    double mu_min_ = 0.0;
};

/// Subset of vertices, kept as both membership mask and member list.
struct VertexSubset {
    std::vector<char> mask;    // size |V|
    std::vector<int> members;  // ascending

    bool contains(int x) const { return mask[x] != 0; }
    bool empty() const { return members.empty(); }

    static VertexSubset of(const WeightedGraph& g, std::vector<int> members);
    static VertexSubset all(const WeightedGraph& g);
};

struct PotentialPair {
    VertexFunction a;
    VertexFunction b;
    double zero_tol = 0.0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    double mu_min = 0.0;
    bool pass() const { return violations.empty(); }
};

/// Checks the standing hypotheses: positive weights/measure, connectivity,
/// and the per-vertex weight-sum bound sum_{y~x} w_xy < c_deg.
ValidationReport validate_graph(const WeightedGraph& g, double c_deg);

/// Boundary of omega: vertices outside omega adjacent to some vertex of omega.
VertexSubset boundary(const WeightedGraph& g, const VertexSubset& omega);

/// omega together with its boundary.
VertexSubset closure(const WeightedGraph& g, const VertexSubset& omega);

bool subset_connected(const WeightedGraph& g, const VertexSubset& s);

struct WellError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyWell : WellError {
    using WellError::WellError;
};
struct DisconnectedWell : WellError {
    using WellError::WellError;
};

struct Wells {
    VertexSubset omega_a;
    VertexSubset omega_b;
    VertexSubset intersection;
};

/// Potential wells {x : a(x) <= zero_tol} and {x : b(x) <= zero_tol}.
/// Throws EmptyWell/DisconnectedWell if the wells or their intersection
/// fail the standing assumptions.
Wells wells(const WeightedGraph& g, const PotentialPair& pot);

}  // namespace gpq
