#include "gpq/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace gpq {

namespace {

double weighted_power_mass(const WeightedGraph& g, const VertexFunction& f, double p,
                           const std::vector<char>* outside_mask) {
    KahanSum s;
    for (int x = 0; x < g.size(); ++x) {
        if (outside_mask && !(*outside_mask)[x]) continue;
        s.add(g.mu(x) * std::pow(std::fabs(f[x]), p));
    }
    return s.value();
}

double sobolev_pow(const WeightedGraph& g, const VertexFunction& f, double s) {
    const double n = sobolev_norm(g, f, s);
    return std::pow(n, s);
}

}  // namespace

SweepResult run_sweep(const ProblemInstance& inst, const std::vector<double>& lambdas,
                      const SolveOptions& opts) {
    if (lambdas.empty()) throw std::invalid_argument("run_sweep: no lambda values");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 1.0))
            throw std::invalid_argument("run_sweep: lambda must be >= 1");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("run_sweep: lambdas must be ascending");
    }
    const auto& g = *inst.graph;
    const LimitProblem lp = make_limit_problem(g, *inst.pot, inst.cfg, *inst.nl);

    SweepResult sr;
    sr.limit = solve_limit_ground_state(lp, inst.env, opts);
    sr.m_omega = sr.limit.energy;

    std::vector<char> off_a(g.size(), 1), off_b(g.size(), 1);
    for (int x : lp.wl.omega_a.members) off_a[x] = 0;
    for (int x : lp.wl.omega_b.members) off_b[x] = 0;
    const double sob_u0 = sobolev_pow(g, sr.limit.state.u, inst.cfg.p);
    const double sob_v0 = sobolev_pow(g, sr.limit.state.v, inst.cfg.q);

    PairState warm = sr.limit.state;  // zero-extended limit state
    for (double lambda : lambdas) {
        SweepRow row;
        row.lambda = lambda;
        try {
            const EnergyContext ctx =
                EnergyContext::full_graph(g, *inst.pot, inst.cfg, *inst.nl, lambda);
            SolveOptions local = opts;
            local.warm_starts.push_back(warm);
            const GroundState gs = solve_ground_state(ctx, inst.env, local);
            row.m_lambda = gs.energy;
            row.gap = sr.m_omega - gs.energy;
            row.kkt_residual = gs.kkt_residual;
            row.certified = gs.certified;
            KahanSum pu, pv;
            for (int x = 0; x < g.size(); ++x) {
                pu.add(g.mu(x) * inst.pot->a[x] *
                       std::pow(std::fabs(gs.state.u[x]), inst.cfg.p));
                pv.add(g.mu(x) * inst.pot->b[x] *
                       std::pow(std::fabs(gs.state.v[x]), inst.cfg.q));
            }
            row.penalty_u = lambda * pu.value();
            row.penalty_v = lambda * pv.value();
            row.tail_u = weighted_power_mass(g, gs.state.u, inst.cfg.p, &off_a);
            row.tail_v = weighted_power_mass(g, gs.state.v, inst.cfg.q, &off_b);
            row.mass_u = weighted_power_mass(g, gs.state.u, inst.cfg.p, nullptr);
            row.mass_v = weighted_power_mass(g, gs.state.v, inst.cfg.q, nullptr);
            row.sobolev_drift =
                std::fabs(sobolev_pow(g, gs.state.u, inst.cfg.p) - sob_u0) +
                std::fabs(sobolev_pow(g, gs.state.v, inst.cfg.q) - sob_v0);
            warm = gs.state;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        sr.rows.push_back(std::move(row));
    }
    return sr;
}

ConvergenceReport convergence_report(const SweepResult& sr, double tol) {
    if (sr.rows.size() < 3)
        throw std::invalid_argument("convergence_report: need >= 3 lambda values");
    ConvergenceReport rep;
    auto add = [&](const std::string& name, double value, double t, bool pass) {
        rep.metrics.push_back({name, value, t, pass});
    };

    double min_gap = std::numeric_limits<double>::infinity();
    bool any_failed = false;
    for (const SweepRow& r : sr.rows) {
        if (r.failed) {
            any_failed = true;
            continue;
        }
        min_gap = std::min(min_gap, r.gap);
    }
    add("all_rows_solved", any_failed ? 1.0 : 0.0, 0.0, !any_failed);
    add("gap_nonnegative", min_gap, -1e-10, min_gap >= -1e-10);

    const SweepRow& last = sr.rows.back();
    const double scale = std::max(std::fabs(sr.m_omega), 1e-300);
    if (last.failed) {
        add("final_row_solved", 1.0, 0.0, false);
    } else {
        add("gap_final", last.gap / scale, tol, last.gap / scale <= tol);
        add("penalty_u_final", last.penalty_u / scale, tol,
            last.penalty_u / scale <= tol);
        add("penalty_v_final", last.penalty_v / scale, tol,
            last.penalty_v / scale <= tol);
        const double tu = last.tail_u / std::max(last.mass_u, 1e-300);
        const double tv = last.tail_v / std::max(last.mass_v, 1e-300);
        add("tail_u_final", tu, tol, tu <= tol);
        add("tail_v_final", tv, tol, tv <= tol);
    }
    rep.pass = true;
    for (const auto& m : rep.metrics) rep.pass = rep.pass && m.pass;
    return rep;
}

}  // namespace gpq
