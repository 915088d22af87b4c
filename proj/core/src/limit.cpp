#include "gpq/limit.hpp"

#include <algorithm>
#include <cmath>

namespace gpq {

LimitProblem make_limit_problem(const WeightedGraph& g, const PotentialPair& pot,
                                const ExponentConfig& cfg, const Nonlinearity& nl) {
    LimitProblem lp{wells(g, pot), EnergyContext{}};
    lp.ctx = EnergyContext::limit_wells(g, pot, cfg, nl, lp.wl);
    return lp;
}

namespace {

// Dense scan over direction space for tiny wells: enumerate a lattice on the
// free coordinates, project each direction, keep the lowest fibering values.
std::vector<PairState> grid_warm_starts(const EnergyContext& ctx, const Wells& wl,
                                        int keep) {
    const int n = ctx.graph->size();
    std::vector<std::pair<int, int>> dofs;  // (vertex, 0 = u / 1 = v)
    for (int x : wl.omega_a.members) dofs.emplace_back(x, 0);
    for (int x : wl.omega_b.members) dofs.emplace_back(x, 1);

    const double levels[] = {-1.0, -2.0 / 3.0, -1.0 / 3.0, 0.0,
                             1.0 / 3.0, 2.0 / 3.0, 1.0};
    const int base = 7;
    long combos = 1;
    for (size_t i = 0; i < dofs.size(); ++i) combos *= base;

    std::vector<std::pair<double, PairState>> best;
    for (long c = 1; c < combos; ++c) {
        PairState d{VertexFunction(n, 0.0), VertexFunction(n, 0.0)};
        long rem = c;
        for (const auto& [x, which] : dofs) {
            const double val = levels[rem % base];
            rem /= base;
            (which == 0 ? d.u : d.v)[x] = val;
        }
        try {
            const FiberResult fr = project_to_nehari(ctx, d);
            best.emplace_back(fr.g_at_t0, std::move(d));
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (static_cast<int>(best.size()) > keep) best.pop_back();
        } catch (const BracketFailure&) {
        }
    }
    std::vector<PairState> out;
    for (auto& [e, s] : best) out.push_back(std::move(s));
    return out;
}

}  // namespace

GroundState solve_limit_ground_state(const LimitProblem& lp, const GrowthEnvelope& env,
                                     const SolveOptions& opts) {
    SolveOptions local = opts;
    const int free_reals = static_cast<int>(lp.wl.omega_a.members.size() +
                                            lp.wl.omega_b.members.size());
    if (free_reals <= 6) {
        auto extra = grid_warm_starts(lp.ctx, lp.wl, 4);
        local.warm_starts.insert(local.warm_starts.end(), extra.begin(), extra.end());
    }
    return solve_ground_state(lp.ctx, env, local);
}

}  // namespace gpq
