#include "gpq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace gpq {

WeightedGraph::WeightedGraph(
    std::vector<std::pair<std::string, double>> vertices,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    ids_.reserve(vertices.size());
    mu_.reserve(vertices.size());
    for (auto& [id, m] : vertices) {
        if (index_.count(id))
            throw std::invalid_argument("duplicate vertex id: " + id);
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("nonpositive measure at vertex " + id);
        index_[id] = static_cast<int>(ids_.size());
        ids_.push_back(std::move(id));
        mu_.push_back(m);
    }
    if (ids_.empty()) throw std::invalid_argument("graph has no vertices");
    mu_min_ = *std::min_element(mu_.begin(), mu_.end());

    std::set<std::pair<int, int>> seen;
    for (const auto& [xa, ya, w] : edges) {
        const int x = index_of(xa);
        const int y = index_of(ya);
        if (x == y) throw std::invalid_argument("self-loop at vertex " + xa);
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("nonpositive weight on edge " + xa + "-" + ya);
        auto key = std::minmax(x, y);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge " + xa + "-" + ya);
        edges_.push_back({key.first, key.second, w});
    }

    const int n = size();
    std::vector<int> degree(n, 0);
    for (const auto& e : edges_) {
        ++degree[e.x];
        ++degree[e.y];
    }
    adj_off_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) adj_off_[i + 1] = adj_off_[i] + degree[i];
    adj_vtx_.resize(adj_off_[n]);
    adj_w_.resize(adj_off_[n]);
    std::vector<int> cursor(adj_off_.begin(), adj_off_.end() - 1);
    for (const auto& e : edges_) {
        adj_vtx_[cursor[e.x]] = e.y;
        adj_w_[cursor[e.x]++] = e.w;
        adj_vtx_[cursor[e.y]] = e.x;
        adj_w_[cursor[e.y]++] = e.w;
    }
}

int WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown vertex id: " + id);
    return it->second;
}

double WeightedGraph::weight_sum(int x) const {
    double s = 0.0;
    auto nb = neighbors(x);
    for (int i = 0; i < nb.count; ++i) s += nb.w_begin[i];
    return s;
}

bool WeightedGraph::connected() const {
    auto d = distances_from(0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<int> WeightedGraph::distances_from(int base) const {
    std::vector<int> dist(size(), -1);
    std::queue<int> q;
    dist[base] = 0;
    q.push(base);
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        auto nb = neighbors(x);
        for (int i = 0; i < nb.count; ++i) {
            const int y = nb.vtx_begin[i];
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }
    return dist;
}

namespace {
std::string vertex_name(int i) {
    std::ostringstream os;
    os << "v";
    if (i < 10) os << "0";
    os << i;
    return os.str();
}
}  // namespace

WeightedGraph WeightedGraph::path(int n, double w, double mu) {
    std::vector<std::pair<std::string, double>> vs;
    std::vector<std::tuple<std::string, std::string, double>> es;
    for (int i = 0; i < n; ++i) vs.emplace_back(vertex_name(i), mu);
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(vertex_name(i), vertex_name(i + 1), w);
    return WeightedGraph(std::move(vs), es);
}

WeightedGraph WeightedGraph::cycle(int n, double w, double mu) {
    std::vector<std::pair<std::string, double>> vs;
    std::vector<std::tuple<std::string, std::string, double>> es;
    for (int i = 0; i < n; ++i) vs.emplace_back(vertex_name(i), mu);
    for (int i = 0; i < n; ++i) es.emplace_back(vertex_name(i), vertex_name((i + 1) % n), w);
    return WeightedGraph(std::move(vs), es);
}

WeightedGraph WeightedGraph::grid(int rows, int cols, double w, double mu) {
    auto name = [cols](int r, int c) { return vertex_name(r * cols + c); };
    std::vector<std::pair<std::string, double>> vs;
    std::vector<std::tuple<std::string, std::string, double>> es;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) vs.emplace_back(name(r, c), mu);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) es.emplace_back(name(r, c), name(r, c + 1), w);
            if (r + 1 < rows) es.emplace_back(name(r, c), name(r + 1, c), w);
        }
    return WeightedGraph(std::move(vs), es);
}

VertexSubset VertexSubset::of(const WeightedGraph& g, std::vector<int> members) {
    VertexSubset s;
    s.mask.assign(g.size(), 0);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int x : members) {
        if (x < 0 || x >= g.size()) throw std::out_of_range("subset member out of range");
        s.mask[x] = 1;
    }
    s.members = std::move(members);
    return s;
}

VertexSubset VertexSubset::all(const WeightedGraph& g) {
    std::vector<int> m(g.size());
    for (int i = 0; i < g.size(); ++i) m[i] = i;
    return of(g, std::move(m));
}

ValidationReport validate_graph(const WeightedGraph& g, double c_deg) {
    ValidationReport rep;
    rep.mu_min = g.mu_min();
    if (!(rep.mu_min > 0.0))
        rep.violations.push_back("measure not uniformly positive");
    for (int x = 0; x < g.size(); ++x) {
        if (g.weight_sum(x) >= c_deg) {
            rep.violations.push_back("weight sum bound violated at vertex " + g.id_of(x));
            break;
        }
    }
    if (!g.connected()) rep.violations.push_back("not connected");
    return rep;
}

VertexSubset boundary(const WeightedGraph& g, const VertexSubset& omega) {
    std::vector<int> members;
    for (int x : omega.members) {
        auto nb = g.neighbors(x);
        for (int i = 0; i < nb.count; ++i)
            if (!omega.contains(nb.vtx_begin[i])) members.push_back(nb.vtx_begin[i]);
    }
    return VertexSubset::of(g, std::move(members));
}

VertexSubset closure(const WeightedGraph& g, const VertexSubset& omega) {
    auto b = boundary(g, omega);
    std::vector<int> members = omega.members;
    members.insert(members.end(), b.members.begin(), b.members.end());
    return VertexSubset::of(g, std::move(members));
}

bool subset_connected(const WeightedGraph& g, const VertexSubset& s) {
    if (s.empty()) return false;
    std::vector<char> seen(g.size(), 0);
    std::queue<int> q;
    q.push(s.members.front());
    seen[s.members.front()] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        auto nb = g.neighbors(x);
        for (int i = 0; i < nb.count; ++i) {
            const int y = nb.vtx_begin[i];
            if (s.contains(y) && !seen[y]) {
                seen[y] = 1;
                ++reached;
                q.push(y);
            }
        }
    }
    return reached == static_cast<int>(s.members.size());
}

Wells wells(const WeightedGraph& g, const PotentialPair& pot) {
    auto zero_set = [&](const VertexFunction& f, const char* name) {
        std::vector<int> members;
        for (int x = 0; x < g.size(); ++x)
            if (f[x] <= pot.zero_tol) members.push_back(x);
        auto s = VertexSubset::of(g, std::move(members));
        if (s.empty()) throw EmptyWell(std::string("empty well: ") + name);
        if (!subset_connected(g, s))
            throw DisconnectedWell(std::string("disconnected well: ") + name);
        return s;
    };
    Wells w;
    w.omega_a = zero_set(pot.a, "Omega_a");
    w.omega_b = zero_set(pot.b, "Omega_b");
    std::vector<int> cap;
    for (int x : w.omega_a.members)
        if (w.omega_b.contains(x)) cap.push_back(x);
    w.intersection = VertexSubset::of(g, std::move(cap));
    if (w.intersection.empty()) throw EmptyWell("empty well: Omega_a n Omega_b");
    if (!subset_connected(g, w.intersection))
        throw DisconnectedWell("disconnected well: Omega_a n Omega_b");
    return w;
}

}  // namespace gpq
