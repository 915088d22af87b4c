#include "gpq/calculus.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gpq {

std::vector<std::string> ExponentConfig::violations() const {
    std::vector<std::string> v;
    auto fail = [&](const std::string& msg) { v.push_back(msg); };
    if (!(p > 1.0)) fail("p must exceed 1");
    if (!(q > 1.0)) fail("q must exceed 1");
    if (!(alpha > beta())) fail("(F2): alpha must exceed beta = max{p,q}");
    const double rho_cap = std::min((alpha - p) / p, (alpha - q) / q);
    if (!(varrho > 0.0 && varrho < rho_cap))
        fail("(F2): varrho must lie in (0, min{(alpha-p)/p, (alpha-q)/q})");
    if (!(r1 > alpha)) fail("(F3): r1 must exceed alpha");
    if (!(r2 > alpha)) fail("(F3): r2 must exceed alpha");
    if (!(1.0 / gamma() < beta() + 1.0 / beta() - 1.0))
        fail("1/gamma < beta + 1/beta - 1 must hold");
    return v;
}

double gamma_form(const WeightedGraph& g, const VertexFunction& psi1,
                  const VertexFunction& psi2, int x) {
    KahanSum s;
    auto nb = g.neighbors(x);
    for (int i = 0; i < nb.count; ++i) {
        const int y = nb.vtx_begin[i];
        s.add(nb.w_begin[i] * (psi1[y] - psi1[x]) * (psi2[y] - psi2[x]));
    }
    return s.value() / (2.0 * g.mu(x));
}

double grad_norm(const WeightedGraph& g, const VertexFunction& psi, int x) {
    return std::sqrt(gamma_form(g, psi, psi, x));
}

VertexFunction grad_norms(const WeightedGraph& g, const VertexFunction& psi) {
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) out[x] = grad_norm(g, psi, x);
    return out;
}

double integral(const WeightedGraph& g, const VertexFunction& psi) {
    KahanSum s;
    for (int x = 0; x < g.size(); ++x) s.add(g.mu(x) * psi[x]);
    return s.value();
}

double integral_over(const WeightedGraph& g, const VertexFunction& psi,
                     const VertexSubset& sub) {
    KahanSum s;
    for (int x : sub.members) s.add(g.mu(x) * psi[x]);
    return s.value();
}

double grad_factor(double grad, double p) {
    if (grad > 0.0) return std::pow(grad, p - 2.0);
    return p == 2.0 ? 1.0 : 0.0;
}

double signed_pow(double t, double e) {
    if (t == 0.0) return 0.0;
    return t > 0.0 ? std::pow(t, e) : -std::pow(-t, e);
}

double p_laplacian_cached(const WeightedGraph& g, const VertexFunction& psi,
                          const VertexFunction& gnorm, double p, int x) {
    const double fx = grad_factor(gnorm[x], p);
    KahanSum s;
    auto nb = g.neighbors(x);
    for (int i = 0; i < nb.count; ++i) {
        const int y = nb.vtx_begin[i];
        const double diff = psi[y] - psi[x];
        if (diff == 0.0) continue;
        const double fy = grad_factor(gnorm[y], p);
        s.add((fy + fx) * nb.w_begin[i] * diff);
    }
    const double out = s.value() / (2.0 * g.mu(x));
    if (!std::isfinite(out)) throw std::runtime_error("p_laplacian: non-finite result");
    return out;
}

double p_laplacian(const WeightedGraph& g, const VertexFunction& psi, double p, int x) {
    return p_laplacian_cached(g, psi, grad_norms(g, psi), p, x);
}

double lp_norm(const WeightedGraph& g, const VertexFunction& f, double theta) {
    if (!(theta >= 1.0)) throw std::invalid_argument("lp_norm: theta < 1");
    KahanSum s;
    for (int x = 0; x < g.size(); ++x) s.add(g.mu(x) * std::pow(std::fabs(f[x]), theta));
    return std::pow(s.value(), 1.0 / theta);
}

double lp_norm_over(const WeightedGraph& g, const VertexFunction& f, double theta,
                    const VertexSubset& sub) {
    if (!(theta >= 1.0)) throw std::invalid_argument("lp_norm: theta < 1");
    KahanSum s;
    for (int x : sub.members) s.add(g.mu(x) * std::pow(std::fabs(f[x]), theta));
    return std::pow(s.value(), 1.0 / theta);
}

double sup_norm(const VertexFunction& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::fabs(v));
    return m;
}

double sup_norm_over(const VertexFunction& f, const VertexSubset& sub) {
    double m = 0.0;
    for (int x : sub.members) m = std::max(m, std::fabs(f[x]));
    return m;
}

double sobolev_norm(const WeightedGraph& g, const VertexFunction& f, double s) {
    KahanSum acc;
    for (int x = 0; x < g.size(); ++x) {
        const double gn = grad_norm(g, f, x);
        acc.add(g.mu(x) * (std::pow(gn, s) + std::pow(std::fabs(f[x]), s)));
    }
    return std::pow(acc.value(), 1.0 / s);
}

double wlambda_norm_pow(const WeightedGraph& g, const VertexFunction& f, double p,
                        double lambda, const VertexFunction& pot) {
    KahanSum acc;
    for (int x = 0; x < g.size(); ++x) {
        const double gn = grad_norm(g, f, x);
        acc.add(g.mu(x) * (std::pow(gn, p) +
                           (lambda * pot[x] + 1.0) * std::pow(std::fabs(f[x]), p)));
    }
    return acc.value();
}

double wlambda_norm(const WeightedGraph& g, const VertexFunction& f, double p,
                    double lambda, const VertexFunction& pot) {
    return std::pow(wlambda_norm_pow(g, f, p, lambda, pot), 1.0 / p);
}

double womega_norm_pow(const WeightedGraph& g, const VertexFunction& f, double p,
                       const VertexSubset& well) {
    const VertexSubset cl = closure(g, well);
    KahanSum acc;
    for (int x : cl.members) acc.add(g.mu(x) * std::pow(grad_norm(g, f, x), p));
    for (int x : well.members) acc.add(g.mu(x) * std::pow(std::fabs(f[x]), p));
    return acc.value();
}

double womega_norm(const WeightedGraph& g, const VertexFunction& f, double p,
                   const VertexSubset& well) {
    return std::pow(womega_norm_pow(g, f, p, well), 1.0 / p);
}

double norm(const WeightedGraph& g, const VertexFunction& f, const NormTag& tag,
            const ExponentConfig& cfg, const PotentialPair* pot, const Wells* wl) {
    switch (tag.kind) {
        case NormTag::LTheta:
            if (std::isinf(tag.param)) return sup_norm(f);
            return lp_norm(g, f, tag.param);
        case NormTag::SupNorm:
            return sup_norm(f);
        case NormTag::Sobolev:
            return sobolev_norm(g, f, tag.param);
        case NormTag::WLambdaA:
            if (!pot) throw std::invalid_argument("norm: potential required");
            return wlambda_norm(g, f, cfg.p, tag.param, pot->a);
        case NormTag::WLambdaB:
            if (!pot) throw std::invalid_argument("norm: potential required");
            return wlambda_norm(g, f, cfg.q, tag.param, pot->b);
        case NormTag::WOmegaA:
            if (!wl) throw std::invalid_argument("norm: wells required");
            return womega_norm(g, f, cfg.p, wl->omega_a);
        case NormTag::WOmegaB:
            if (!wl) throw std::invalid_argument("norm: wells required");
            return womega_norm(g, f, cfg.q, wl->omega_b);
    }
    throw std::logic_error("norm: bad tag");
}

double inverse_potential_norm(const WeightedGraph& g, const VertexFunction& pot,
                              double p) {
    const double theta = 1.0 / (p - 1.0);
    KahanSum s;
    for (int x = 0; x < g.size(); ++x)
        s.add(g.mu(x) * std::pow(1.0 / (pot[x] + 1.0), theta));
    return std::pow(s.value(), 1.0 / theta);
}

namespace {

double embedding_k(double d, double theta, double s_exp, double inv_norm) {
    // theta >= s_exp: d^{(theta-s)/theta}; else min of the two A2-based forms
    if (std::isinf(theta)) return d;  // Lemma 2.1 sup-norm constant
    if (theta >= s_exp) return std::pow(d, (theta - s_exp) / theta);
    const double k1 = std::pow(d, (theta - 1.0) / theta) *
                      std::pow(inv_norm, 1.0 / (s_exp * theta));
    const double k2 = std::pow(d, s_exp * (theta - 1.0) / theta) *
                      std::pow(inv_norm, 1.0 / s_exp);
    return std::min(k1, k2);
}

double star_k(const WeightedGraph& g, const VertexSubset& well, double theta,
              double s_exp) {
    double vol = 0.0;
    for (int x : well.members) vol += g.mu(x);
    const double volpow = std::isinf(theta) ? 1.0 : std::pow(vol, 1.0 / theta);
    return volpow * std::pow(1.0 / g.mu_min(), 1.0 / s_exp);
}

}  // namespace

EmbeddingConstants embedding_constants(const WeightedGraph& g, const PotentialPair& pot,
                                       const Wells& wl, const ExponentConfig& cfg,
                                       double theta1, double theta2) {
    EmbeddingConstants k;
    k.d1 = std::pow(1.0 / g.mu_min(), 1.0 / cfg.p);
    k.d2 = std::pow(1.0 / g.mu_min(), 1.0 / cfg.q);
    k.k_p_theta1 =
        embedding_k(k.d1, theta1, cfg.p, inverse_potential_norm(g, pot.a, cfg.p));
    k.k_q_theta2 =
        embedding_k(k.d2, theta2, cfg.q, inverse_potential_norm(g, pot.b, cfg.q));
    k.k_star_p_theta1 = star_k(g, wl.omega_a, theta1, cfg.p);
    k.k_star_q_theta2 = star_k(g, wl.omega_b, theta2, cfg.q);
    k.k_star = std::max(k.k_star_p_theta1, k.k_star_q_theta2);
    return k;
}

}  // namespace gpq
