#include "gpq/energy.hpp"

#include <cmath>

namespace gpq {

EnergyContext EnergyContext::full_graph(const WeightedGraph& g, const PotentialPair& pot,
                                        const ExponentConfig& cfg, const Nonlinearity& nl,
                                        double lambda) {
    if (!(lambda >= 1.0))
        throw std::invalid_argument("EnergyContext: lambda must be >= 1");
    EnergyContext ctx;
    ctx.graph = &g;
    ctx.pot = &pot;
    ctx.cfg = cfg;
    ctx.nl = &nl;
    ctx.lambda = lambda;
    ctx.mode = Mode::FullGraph;
    return ctx;
}

EnergyContext EnergyContext::limit_wells(const WeightedGraph& g, const PotentialPair& pot,
                                         const ExponentConfig& cfg, const Nonlinearity& nl,
                                         const Wells& wl) {
    EnergyContext ctx;
    ctx.graph = &g;
    ctx.pot = &pot;
    ctx.cfg = cfg;
    ctx.nl = &nl;
    ctx.mode = Mode::LimitWells;
    ctx.wl = wl;
    ctx.closure_a = closure(g, wl.omega_a);
    ctx.closure_b = closure(g, wl.omega_b);
    std::vector<int> dom = wl.omega_a.members;
    dom.insert(dom.end(), wl.omega_b.members.begin(), wl.omega_b.members.end());
    ctx.f_domain = VertexSubset::of(g, std::move(dom));
    return ctx;
}

void check_support(const EnergyContext& ctx, const PairState& state) {
    if (ctx.mode == EnergyContext::Mode::FullGraph) return;
    const auto& g = *ctx.graph;
    for (int x = 0; x < g.size(); ++x) {
        if (!ctx.wl.omega_a.contains(x) && state.u[x] != 0.0)
            throw DomainViolation("limit state: u nonzero outside Omega_a at " +
                                  g.id_of(x));
        if (!ctx.wl.omega_b.contains(x) && state.v[x] != 0.0)
            throw DomainViolation("limit state: v nonzero outside Omega_b at " +
                                  g.id_of(x));
    }
}

NormPows state_norm_pows(const EnergyContext& ctx, const PairState& state) {
    const auto& g = *ctx.graph;
    NormPows n;
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        n.up = wlambda_norm_pow(g, state.u, ctx.cfg.p, ctx.lambda, ctx.pot->a);
        n.vq = wlambda_norm_pow(g, state.v, ctx.cfg.q, ctx.lambda, ctx.pot->b);
    } else {
        n.up = womega_norm_pow(g, state.u, ctx.cfg.p, ctx.wl.omega_a);
        n.vq = womega_norm_pow(g, state.v, ctx.cfg.q, ctx.wl.omega_b);
    }
    return n;
}

double pair_norm(const EnergyContext& ctx, const PairState& state) {
    const NormPows n = state_norm_pows(ctx, state);
    return std::pow(n.up, 1.0 / ctx.cfg.p) + std::pow(n.vq, 1.0 / ctx.cfg.q);
}

namespace {

// int over the mode's F-domain of fn(x, u(x), v(x)) dmu
template <typename Fn>
double f_integral(const EnergyContext& ctx, const PairState& st, Fn&& fn) {
    const auto& g = *ctx.graph;
    KahanSum s;
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        for (int x = 0; x < g.size(); ++x) s.add(g.mu(x) * fn(x, st.u[x], st.v[x]));
    } else {
        for (int x : ctx.f_domain.members) s.add(g.mu(x) * fn(x, st.u[x], st.v[x]));
    }
    return s.value();
}

}  // namespace

double j_eval(const EnergyContext& ctx, const PairState& state) {
    check_support(ctx, state);
    const NormPows n = state_norm_pows(ctx, state);
    const double fint = f_integral(ctx, state, [&](int x, double t, double s) {
        return ctx.nl->f(x, t, s);
    });
    return n.up / ctx.cfg.p + n.vq / ctx.cfg.q - fint;
}

double j_gateaux(const EnergyContext& ctx, const PairState& state,
                 const PairState& direction) {
    check_support(ctx, state);
    check_support(ctx, direction);
    const auto& g = *ctx.graph;
    const double p = ctx.cfg.p, q = ctx.cfg.q;
    const VertexFunction gu = grad_norms(g, state.u);
    const VertexFunction gv = grad_norms(g, state.v);
    KahanSum s;
    auto grad_term = [&](int x) {
        s.add(g.mu(x) * grad_factor(gu[x], p) * gamma_form(g, state.u, direction.u, x));
        s.add(g.mu(x) * grad_factor(gv[x], q) * gamma_form(g, state.v, direction.v, x));
    };
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        for (int x = 0; x < g.size(); ++x) {
            grad_term(x);
            s.add(g.mu(x) * (ctx.lambda * ctx.pot->a[x] + 1.0) *
                  signed_pow(state.u[x], p - 1.0) * direction.u[x]);
            s.add(g.mu(x) * (ctx.lambda * ctx.pot->b[x] + 1.0) *
                  signed_pow(state.v[x], q - 1.0) * direction.v[x]);
            s.add(-g.mu(x) * (ctx.nl->ft(x, state.u[x], state.v[x]) * direction.u[x] +
                              ctx.nl->fs(x, state.u[x], state.v[x]) * direction.v[x]));
        }
        return s.value();
    }
    // Limit mode: gradients over the well closures, zeroth-order terms over
    // the wells, F over their union. Gradient contributions at vertices past
    // the closures vanish anyway because all differences are zero there.
    for (int x : ctx.closure_a.members)
        s.add(g.mu(x) * grad_factor(gu[x], p) * gamma_form(g, state.u, direction.u, x));
    for (int x : ctx.closure_b.members)
        s.add(g.mu(x) * grad_factor(gv[x], q) * gamma_form(g, state.v, direction.v, x));
    for (int x : ctx.wl.omega_a.members)
        s.add(g.mu(x) * signed_pow(state.u[x], p - 1.0) * direction.u[x]);
    for (int x : ctx.wl.omega_b.members)
        s.add(g.mu(x) * signed_pow(state.v[x], q - 1.0) * direction.v[x]);
    for (int x : ctx.f_domain.members)
        s.add(-g.mu(x) * (ctx.nl->ft(x, state.u[x], state.v[x]) * direction.u[x] +
                          ctx.nl->fs(x, state.u[x], state.v[x]) * direction.v[x]));
    return s.value();
}

double nehari_k(const EnergyContext& ctx, const PairState& state) {
    check_support(ctx, state);
    const NormPows n = state_norm_pows(ctx, state);
    const double fint = f_integral(ctx, state, [&](int x, double t, double s) {
        return ctx.nl->ft(x, t, s) * t + ctx.nl->fs(x, t, s) * s;
    });
    return n.up + n.vq - fint;
}

double k_prime_pairing(const EnergyContext& ctx, const PairState& state) {
    check_support(ctx, state);
    const NormPows n = state_norm_pows(ctx, state);
    const double fint = f_integral(ctx, state, [&](int x, double t, double s) {
        return ctx.nl->ftt(x, t, s) * t * t + ctx.nl->fss(x, t, s) * s * s +
               2.0 * ctx.nl->fts(x, t, s) * t * s + ctx.nl->ft(x, t, s) * t +
               ctx.nl->fs(x, t, s) * s;
    });
    return ctx.cfg.p * n.up + ctx.cfg.q * n.vq - fint;
}

namespace {

double smoothed_factor(double grad, double p, double eps) {
    return std::pow(grad * grad + eps, (p - 2.0) / 2.0);
}

// p-Laplacian with the smoothed gradient factor (descent path only).
double smoothed_p_laplacian(const WeightedGraph& g, const VertexFunction& psi,
                            const VertexFunction& gnorm, double p, int x,
                            double eps) {
    const double fx = smoothed_factor(gnorm[x], p, eps);
    KahanSum s;
    auto nb = g.neighbors(x);
    for (int i = 0; i < nb.count; ++i) {
        const int y = nb.vtx_begin[i];
        const double diff = psi[y] - psi[x];
        if (diff == 0.0) continue;
        s.add((smoothed_factor(gnorm[y], p, eps) + fx) * nb.w_begin[i] * diff);
    }
    return s.value() / (2.0 * g.mu(x));
}

}  // namespace

Residual residual(const EnergyContext& ctx, const PairState& state) {
    check_support(ctx, state);
    const auto& g = *ctx.graph;
    const double p = ctx.cfg.p, q = ctx.cfg.q;
    const VertexFunction gu = grad_norms(g, state.u);
    const VertexFunction gv = grad_norms(g, state.v);
    Residual res;
    res.ru.assign(g.size(), 0.0);
    res.rv.assign(g.size(), 0.0);
    auto ru_at = [&](int x, double coef) {
        return -p_laplacian_cached(g, state.u, gu, p, x) +
               coef * signed_pow(state.u[x], p - 1.0) -
               ctx.nl->ft(x, state.u[x], state.v[x]);
    };
    auto rv_at = [&](int x, double coef) {
        return -p_laplacian_cached(g, state.v, gv, q, x) +
               coef * signed_pow(state.v[x], q - 1.0) -
               ctx.nl->fs(x, state.u[x], state.v[x]);
    };
    if (ctx.mode == EnergyContext::Mode::FullGraph) {
        for (int x = 0; x < g.size(); ++x) {
            res.ru[x] = ru_at(x, ctx.lambda * ctx.pot->a[x] + 1.0);
            res.rv[x] = rv_at(x, ctx.lambda * ctx.pot->b[x] + 1.0);
        }
    } else {
        for (int x : ctx.wl.omega_a.members) res.ru[x] = ru_at(x, 1.0);
        for (int x : ctx.wl.omega_b.members) res.rv[x] = rv_at(x, 1.0);
    }
    KahanSum l2;
    for (int x = 0; x < g.size(); ++x) {
        res.max_abs = std::max(res.max_abs,
                               std::max(std::fabs(res.ru[x]), std::fabs(res.rv[x])));
        l2.add(g.mu(x) * (res.ru[x] * res.ru[x] + res.rv[x] * res.rv[x]));
    }
    res.l2_weighted = std::sqrt(l2.value());
    return res;
}

double kkt_residual(const Residual& res, const PairState& state) {
    const double scale = 1.0 + std::max(sup_norm(state.u), sup_norm(state.v));
    return res.max_abs / scale;
}

PairState euclidean_gradient(const EnergyContext& ctx, const PairState& state,
                             double eps_reg) {
    const auto& g = *ctx.graph;
    const double p = ctx.cfg.p, q = ctx.cfg.q;
    const VertexFunction gu = grad_norms(g, state.u);
    const VertexFunction gv = grad_norms(g, state.v);
    PairState grad;
    grad.u.assign(g.size(), 0.0);
    grad.v.assign(g.size(), 0.0);
    const bool full = ctx.mode == EnergyContext::Mode::FullGraph;
    for (int x = 0; x < g.size(); ++x) {
        if (full || ctx.wl.omega_a.contains(x)) {
            const double coef = full ? ctx.lambda * ctx.pot->a[x] + 1.0 : 1.0;
            grad.u[x] = g.mu(x) * (-smoothed_p_laplacian(g, state.u, gu, p, x, eps_reg) +
                                   coef * signed_pow(state.u[x], p - 1.0) -
                                   ctx.nl->ft(x, state.u[x], state.v[x]));
        }
        if (full || ctx.wl.omega_b.contains(x)) {
            const double coef = full ? ctx.lambda * ctx.pot->b[x] + 1.0 : 1.0;
            grad.v[x] = g.mu(x) * (-smoothed_p_laplacian(g, state.v, gv, q, x, eps_reg) +
                                   coef * signed_pow(state.v[x], q - 1.0) -
                                   ctx.nl->fs(x, state.u[x], state.v[x]));
        }
    }
    return grad;
}

}  // namespace gpq
