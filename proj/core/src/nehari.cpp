#include "gpq/nehari.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace gpq {

namespace {

PairState scaled(const PairState& s, double t) {
    PairState out = s;
    for (double& x : out.u) x *= t;
    for (double& x : out.v) x *= t;
    return out;
}

double g_prime_cached(const EnergyContext& ctx, const PairState& dir, double up,
                      double vq, double t) {
    const auto& g = *ctx.graph;
    KahanSum s;
    auto term = [&](int x) {
        const double tu = t * dir.u[x], tv = t * dir.v[x];
        s.add(g.mu(x) * (ctx.nl->ft(x, tu, tv) * dir.u[x] +
                         ctx.nl->fs(x, tu, tv) * dir.v[x]));
    };
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        for (int x = 0; x < g.size(); ++x) term(x);
    } else {
        for (int x : ctx.f_domain.members) term(x);
    }
    return std::pow(t, ctx.cfg.p - 1.0) * up + std::pow(t, ctx.cfg.q - 1.0) * vq -
           s.value();
}

}  // namespace

double fiber_g(const EnergyContext& ctx, const PairState& dir, double t) {
    return j_eval(ctx, scaled(dir, t));
}

double fiber_g_prime(const EnergyContext& ctx, const PairState& dir, double t) {
    const NormPows n = state_norm_pows(ctx, dir);
    return g_prime_cached(ctx, dir, n.up, n.vq, t);
}

FiberResult project_to_nehari(const EnergyContext& ctx, const PairState& dir) {
    const NormPows n = state_norm_pows(ctx, dir);
    if (n.up + n.vq <= 0.0) throw BracketFailure("project_to_nehari: zero direction");
    auto gp = [&](double t) { return g_prime_cached(ctx, dir, n.up, n.vq, t); };

    FiberResult out;
    double lo = 1.0, hi = 1.0;
    double glo = gp(1.0);
    // g' > 0 near 0 and < 0 at infinity; expand until the bracket straddles
    if (glo > 0.0) {
        hi = 2.0;
        while (gp(hi) > 0.0) {
            ++out.iterations;
            hi *= 2.0;
            if (hi > 1e12) throw BracketFailure("project_to_nehari: no sign change");
        }
    } else if (glo < 0.0) {
        hi = 1.0;
        lo = 0.5;
        while (gp(lo) < 0.0) {
            ++out.iterations;
            lo *= 0.5;
            if (lo < 1e-12) throw BracketFailure("project_to_nehari: no sign change");
        }
    } else {
        out.t0 = 1.0;
        out.bracket_lo = out.bracket_hi = 1.0;
        out.g_at_t0 = fiber_g(ctx, dir, 1.0);
        return out;
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    // bisect to the last representable midpoint so the manifold defect of
    // the projected state is set by evaluation roundoff alone
    while (hi - lo > 4e-16 * hi) {
        ++out.iterations;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gp(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.t0 = 0.5 * (lo + hi);
    out.g_at_t0 = fiber_g(ctx, dir, out.t0);
    return out;
}

BoundsReport compute_bounds(const EnergyContext& ctx, const GrowthEnvelope& env,
                            double m_ref) {
    const auto& g = *ctx.graph;
    const auto& cfg = ctx.cfg;
    const double p = cfg.p, q = cfg.q, r1 = cfg.r1, r2 = cfg.r2;
    const double beta = cfg.beta(), gam = cfg.gamma();

    double kp, kq;  // K_{(p,r1)}, K_{(q,r2)} (starred in limit mode)
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        Wells whole{VertexSubset::all(g), VertexSubset::all(g), VertexSubset::all(g)};
        const auto k = embedding_constants(g, *ctx.pot, whole, cfg, r1, r2);
        kp = k.k_p_theta1;
        kq = k.k_q_theta2;
    } else {
        const auto k = embedding_constants(g, *ctx.pot, ctx.wl, cfg, r1, r2);
        kp = k.k_star_p_theta1;
        kq = k.k_star_q_theta2;
    }

    const double c1 = env.c1_sup(), c2 = env.c2_sup();
    const double num_a = 1.0 / p - 2.0 * c1 / p;
    const double den_a = (2.0 * c2 / r1) * std::pow(kp, r1);
    const double num_b = 1.0 / q - (c1 * (p - 1.0) / p + c1 / q);
    const double den_b =
        (c2 * (r1 - 1.0) / r1 + c2 / r2) * std::pow(kq, r2);
    if (!(num_a > 0.0) || !(num_b > 0.0))
        throw InvalidEnvelope("compute_bounds: C1 too large for the eta brackets");
    double rho_max = 1.0;
    if (den_a > 0.0) rho_max = std::min(rho_max, std::pow(num_a / den_a, 1.0 / (r1 - p)));
    if (den_b > 0.0) rho_max = std::min(rho_max, std::pow(num_b / den_b, 1.0 / (r2 - q)));

    BoundsReport rep;
    const int grid = 4096;
    for (int i = 1; i <= grid; ++i) {
        const double rho = rho_max * i / (grid + 1);
        const double bracket =
            std::min(num_a - den_a * std::pow(rho, r1 - p),
                     num_b - den_b * std::pow(rho, r2 - q));
        const double eta = std::pow(rho, beta) / std::pow(2.0, beta - 1.0) * bracket;
        if (eta > rep.eta) {
            rep.eta = eta;
            rep.rho = rho;
        }
    }

    const double c3 = env.c3_sup(cfg), c4 = env.c4_sup(cfg);
    if (!(c3 < 1.0)) throw InvalidEnvelope("compute_bounds: ||C3|| >= 1");
    const double d = std::max(c4 * std::pow(kp, r1), c4 * std::pow(kq, r2));
    if (!(d > 0.0)) throw InvalidEnvelope("compute_bounds: vanishing C4");
    const double n = 1.0 - c3;
    const double rmax = std::max(r1, r2);
    const double xi1 = std::pow(n / (std::pow(2.0, gam) * d), 1.0 / (rmax - gam));
    const double xi2 = std::pow(n / (2.0 * d), 1.0 / std::max(r1 - p, r2));
    const double xi3 = std::pow(n / (2.0 * d), 1.0 / std::max(r1, r2 - q));
    const double xi4 = std::pow(n / (std::pow(2.0, beta) * d), 1.0 / (rmax - beta));
    rep.xi = std::min(std::min(xi1, xi2), std::min(xi3, xi4));

    const double denom = 1.0 / beta - (1.0 + cfg.varrho) / cfg.alpha;
    if (!(denom > 0.0))
        throw InvalidEnvelope("compute_bounds: 1/beta <= (1+varrho)/alpha");
    rep.upper_L = std::pow(
        std::max(std::pow(2.0, p - 1.0), std::pow(2.0, q - 1.0)) *
            (m_ref / denom + 1.0),
        1.0 / gam);
    return rep;
}

namespace {

struct Candidate {
    PairState state;
    double energy = std::numeric_limits<double>::infinity();
    double start_energy = std::numeric_limits<double>::infinity();
    double kkt = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool valid = false;
    std::vector<std::array<double, 3>> trace;
};

void push_trace(std::vector<std::array<double, 3>>& trace, const EnergyContext& ctx,
                double energy, const PairState& state) {
    const NormPows np = state_norm_pows(ctx, state);
    trace.push_back({energy, np.up, np.vq});
}

double dot(const PairState& a, const PairState& b) {
    KahanSum s;
    for (size_t i = 0; i < a.u.size(); ++i) s.add(a.u[i] * b.u[i]);
    for (size_t i = 0; i < a.v.size(); ++i) s.add(a.v[i] * b.v[i]);
    return s.value();
}

// Conditioning of the descent metric: divide by the stiff diagonal
// (lambda a + 1) so large lambda does not freeze off-well components.
PairState precondition(const EnergyContext& ctx, const PairState& grad) {
    PairState pg = grad;
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        for (size_t x = 0; x < pg.u.size(); ++x) {
            pg.u[x] /= ctx.lambda * ctx.pot->a[x] + 1.0;
            pg.v[x] /= ctx.lambda * ctx.pot->b[x] + 1.0;
        }
    }
    return pg;
}

Candidate run_descent(const EnergyContext& ctx, PairState dir,
                      const SolveOptions& opts) {
    Candidate cand;
    FiberResult fr;
    try {
        fr = project_to_nehari(ctx, dir);
    } catch (const BracketFailure&) {
        return cand;  // invalid start; skip
    }
    PairState state = scaled(dir, fr.t0);
    double energy = j_eval(ctx, state);
    cand.start_energy = energy;
    push_trace(cand.trace, ctx, energy, state);

    auto descend = [&](PairState& state, double& energy) {
    PairState prev_state, prev_pg;
    bool have_prev = false;
    double step = 1.0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const Residual res = residual(ctx, state);
        cand.kkt = kkt_residual(res, state);
        if (cand.kkt <= opts.tol_res) {
            cand.converged = true;
            break;
        }
        const PairState grad = euclidean_gradient(ctx, state);
        PairState pg = precondition(ctx, grad);
        // the radial component is annihilated by the re-projection, so drop
        // it; otherwise the Armijo slope overstates the achievable descent
        const double ss = dot(state, state);
        if (ss > 0.0) {
            const double radial = dot(pg, state) / ss;
            for (size_t i = 0; i < pg.u.size(); ++i) {
                pg.u[i] -= radial * state.u[i];
                pg.v[i] -= radial * state.v[i];
            }
        }
        const double slope = dot(grad, pg);
        if (!(slope > 0.0)) break;  // flat: stalled
        if (have_prev) {
            PairState dx = state, dg = pg;
            for (size_t i = 0; i < dx.u.size(); ++i) {
                dx.u[i] -= prev_state.u[i];
                dx.v[i] -= prev_state.v[i];
                dg.u[i] -= prev_pg.u[i];
                dg.v[i] -= prev_pg.v[i];
            }
            const double sy = dot(dx, dg), yy = dot(dg, dg);
            if (yy > 0.0 && std::isfinite(sy))
                step = std::clamp(std::fabs(sy) / yy, 1e-12, 1e6);
        } else {
            step = 1.0 / (1.0 + std::sqrt(slope));
        }
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            PairState trial = state;
            for (size_t i = 0; i < trial.u.size(); ++i) {
                trial.u[i] -= step * pg.u[i];
                trial.v[i] -= step * pg.v[i];
            }
            try {
                const FiberResult tf = project_to_nehari(ctx, trial);
                const PairState next = scaled(trial, tf.t0);
                const double en = j_eval(ctx, next);
                if (en < energy - 1e-4 * step * slope) {
                    prev_state = state;
                    prev_pg = pg;
                    have_prev = true;
                    state = next;
                    energy = en;
                    push_trace(cand.trace, ctx, energy, state);
                    accepted = true;
                    break;
                }
            } catch (const BracketFailure&) {
                // step left the cone where projection exists; shrink
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent at machine resolution
    }
    };

    descend(state, energy);
    // semi-trivial polish: a component stuck at the roundoff floor keeps the
    // pointwise defect noisy; the exactly zeroed state is a valid candidate
    // and often the actual minimizer, so offer it and re-descend on success
    if (!cand.converged) {
        for (int comp = 0; comp < 2; ++comp) {
            PairState trial = state;
            auto& zeroed = comp == 0 ? trial.v : trial.u;
            auto& kept = comp == 0 ? trial.u : trial.v;
            bool was_nonzero = false, keeps_mass = false;
            for (double& w : zeroed) {
                was_nonzero = was_nonzero || w != 0.0;
                w = 0.0;
            }
            for (double w : kept) keeps_mass = keeps_mass || w != 0.0;
            if (!was_nonzero || !keeps_mass) continue;
            try {
                const FiberResult tf = project_to_nehari(ctx, trial);
                const PairState next = scaled(trial, tf.t0);
                const double en = j_eval(ctx, next);
                if (en <= energy + 1e-12 * (1.0 + std::fabs(energy))) {
                    state = next;
                    energy = en;
                    push_trace(cand.trace, ctx, energy, state);
                    cand.converged = false;
                    descend(state, energy);
                    break;
                }
            } catch (const BracketFailure&) {
            }
        }
    }
    // near a stiff minimizer the energy decrease per step falls below the
    // roundoff floor while the pointwise defect is still resolvable; finish
    // with steps accepted by defect decrease instead of energy decrease
    if (!cand.converged) {
        double kkt = kkt_residual(residual(ctx, state), state);
        double step = 1.0;
        for (int it = 0; it < 400 && kkt > 0.25 * opts.tol_res; ++it) {
            const PairState pg = precondition(ctx, euclidean_gradient(ctx, state));
            bool accepted = false;
            for (int bt = 0; bt < 40; ++bt) {
                PairState trial = state;
                for (size_t i = 0; i < trial.u.size(); ++i) {
                    trial.u[i] -= step * pg.u[i];
                    trial.v[i] -= step * pg.v[i];
                }
                try {
                    const FiberResult tf = project_to_nehari(ctx, trial);
                    const PairState next = scaled(trial, tf.t0);
                    const double kn = kkt_residual(residual(ctx, next), next);
                    if (kn < kkt * (1.0 - 1e-4)) {
                        state = next;
                        kkt = kn;
                        energy = j_eval(ctx, state);
                        push_trace(cand.trace, ctx, energy, state);
                        accepted = true;
                        step *= 1.5;
                        break;
                    }
                } catch (const BracketFailure&) {
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }
        cand.kkt = kkt;
        cand.converged = kkt <= opts.tol_res;
    }
    cand.state = std::move(state);
    cand.energy = energy;
    cand.valid = true;
    return cand;
}

int worker_count(int jobs) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GPQ_THREADS")) {
        const int req = std::atoi(env);
        if (req > 0) n = req;
    }
    if (n < 1) n = 1;
    return std::min(n, jobs);
}

}  // namespace

GroundState solve_ground_state(const EnergyContext& ctx, const GrowthEnvelope& env,
                               const SolveOptions& opts) {
    const auto& g = *ctx.graph;
    const int n = g.size();

    // Limit-mode degrees of freedom (full graph: everything is free)
    std::vector<char> free_u(n, 1), free_v(n, 1);
    if (ctx.mode == EnergyContext::Mode::LimitWells) {
        free_u.assign(n, 0);
        free_v.assign(n, 0);
        for (int x : ctx.wl.omega_a.members) free_u[x] = 1;
        for (int x : ctx.wl.omega_b.members) free_v[x] = 1;
    }
    auto mask = [&](PairState s) {
        for (int x = 0; x < n; ++x) {
            if (!free_u[x]) s.u[x] = 0.0;
            if (!free_v[x]) s.v[x] = 0.0;
        }
        return s;
    };

    std::vector<PairState> starts;
    for (const PairState& w : opts.warm_starts) starts.push_back(mask(w));

    // well-indicator warm start
    {
        PairState ind{VertexFunction(n, 0.0), VertexFunction(n, 0.0)};
        bool have = false;
        if (ctx.mode == EnergyContext::Mode::LimitWells) {
            for (int x : ctx.wl.omega_a.members) ind.u[x] = 1.0;
            for (int x : ctx.wl.omega_b.members) ind.v[x] = 1.0;
            have = true;
        } else {
            try {
                const Wells wl = wells(g, *ctx.pot);
                for (int x : wl.omega_a.members) ind.u[x] = 1.0;
                for (int x : wl.omega_b.members) ind.v[x] = 1.0;
                have = true;
            } catch (const WellError&) {
                // no usable wells; random starts only
            }
        }
        if (have) starts.push_back(std::move(ind));
    }

    while (static_cast<int>(starts.size()) < std::max(opts.restarts, 1) +
                                                 static_cast<int>(opts.warm_starts.size())) {
        std::mt19937_64 rng(opts.seed * 1000003ULL + starts.size());
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        PairState d{VertexFunction(n, 0.0), VertexFunction(n, 0.0)};
        for (int x = 0; x < n; ++x) {
            if (free_u[x]) d.u[x] = uni(rng);
            if (free_v[x]) d.v[x] = uni(rng);
        }
        starts.push_back(std::move(d));
    }

    const int jobs = static_cast<int>(starts.size());
    std::vector<Candidate> cands(jobs);
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= jobs) return;
            cands[i] = run_descent(ctx, starts[i], opts);
        }
    };
    const int workers = worker_count(jobs);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // deterministic reduction: lowest energy, ties to the lowest index
    int best = -1;
    for (int i = 0; i < jobs; ++i) {
        if (!cands[i].valid) continue;
        if (best < 0 || cands[i].energy < cands[best].energy) best = i;
    }
    if (best < 0) throw BracketFailure("solve_ground_state: every start failed");

    Candidate& win = cands[best];
    GroundState gs;
    gs.state = std::move(win.state);
    gs.energy = win.energy;
    gs.lambda = ctx.lambda;
    gs.nehari_residual = std::fabs(nehari_k(ctx, gs.state));
    gs.kkt_residual = win.kkt;
    gs.k_prime = k_prime_pairing(ctx, gs.state);
    gs.restarts_used = jobs;
    gs.descent_trace = std::move(win.trace);
    gs.bounds = compute_bounds(ctx, env, gs.energy);

    const NormPows np = state_norm_pows(ctx, gs.state);
    const double kscale = std::max(1.0, np.up + np.vq);
    gs.certified = win.converged && gs.nehari_residual <= opts.tol_k * kscale &&
                   gs.kkt_residual <= opts.tol_res && gs.k_prime < 0.0;

    for (const Candidate& c : cands)
        if (c.valid && gs.energy > c.start_energy + 1e-11 * (1.0 + std::fabs(c.start_energy)))
            throw BoundViolation("ground state above a projected start energy");
    if (gs.certified) {
        const double norm = pair_norm(ctx, gs.state);
        const double slack = 1e-9 * (1.0 + norm);
        if (gs.bounds.eta > gs.energy + 1e-9 * (1.0 + gs.energy) ||
            norm < gs.bounds.xi - slack || norm > gs.bounds.upper_L + slack)
            throw BoundViolation("certified state violates the eta/xi/L bounds");
    }
    return gs;
}

}  // namespace gpq
