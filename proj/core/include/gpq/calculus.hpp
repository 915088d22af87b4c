#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpq/graph.hpp"

namespace gpq {

/// Exponent bundle (p, q, alpha, varrho, r1, r2) with the derived
/// beta = max{p,q} and gamma = min{p,q}.
struct ExponentConfig {
    double p = 2.0;
    double q = 2.0;
    double alpha = 4.0;
    double varrho = 0.1;
    double r1 = 5.0;
    double r2 = 5.0;

    double beta() const { return p > q ? p : q; }
    double gamma() const { return p < q ? p : q; }

    /// Violated growth-condition constraints, empty when admissible.
    std::vector<std::string> violations() const;
};

/// Kahan-compensated accumulator; all integrals and norms go through it.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// Gradient form Gamma(psi1, psi2)(x) = (1/2mu(x)) sum_{y~x} w_xy
// (psi1(y)-psi1(x))(psi2(y)-psi2(x)).
double gamma_form(const WeightedGraph& g, const VertexFunction& psi1,
                  const VertexFunction& psi2, int x);

/// |grad psi|(x) = sqrt(Gamma(psi,psi)(x)).
double grad_norm(const WeightedGraph& g, const VertexFunction& psi, int x);

/// All gradient-length values in one pass.
VertexFunction grad_norms(const WeightedGraph& g, const VertexFunction& psi);

/// Integral over the whole graph: sum_x mu(x) psi(x).
double integral(const WeightedGraph& g, const VertexFunction& psi);

/// Integral restricted to a subset.
double integral_over(const WeightedGraph& g, const VertexFunction& psi,
                     const VertexSubset& s);

// |g|^{p-2} with the zero-gradient convention: at g == 0 the factor is 1 for
// p == 2 and 0 otherwise (for p < 2 the factor only ever multiplies a zero
// difference, see p_laplacian).
double grad_factor(double grad, double p);

/// sign(t) |t|^{e}; 0 at t = 0.
double signed_pow(double t, double e);

// Delta_p psi(x) = (1/2mu(x)) sum_{y~x} (|grad psi|^{p-2}(y) +
// |grad psi|^{p-2}(x)) w_xy (psi(y)-psi(x)).
double p_laplacian(const WeightedGraph& g, const VertexFunction& psi, double p, int x);

/// As above with precomputed gradient lengths (kernel path).
double p_laplacian_cached(const WeightedGraph& g, const VertexFunction& psi,
                          const VertexFunction& gnorm, double p, int x);

struct NormTag {
    enum Kind { LTheta, SupNorm, Sobolev, WLambdaA, WLambdaB, WOmegaA, WOmegaB } kind;
    double param = 0.0;  // theta for LTheta, s for Sobolev, lambda for WLambda
};

double lp_norm(const WeightedGraph& g, const VertexFunction& f, double theta);
double lp_norm_over(const WeightedGraph& g, const VertexFunction& f, double theta,
                    const VertexSubset& s);
double sup_norm(const VertexFunction& f);
double sup_norm_over(const VertexFunction& f, const VertexSubset& s);

/// W^{1,s} norm: (int (|grad u|^s + |u|^s) dmu)^{1/s}.
double sobolev_norm(const WeightedGraph& g, const VertexFunction& f, double s);

/// ||u||_{W_lambda(a)} = (int (|grad u|^p + (lambda a + 1)|u|^p) dmu)^{1/p}.
double wlambda_norm(const WeightedGraph& g, const VertexFunction& f, double p,
                    double lambda, const VertexFunction& pot);
double wlambda_norm_pow(const WeightedGraph& g, const VertexFunction& f, double p,
                        double lambda, const VertexFunction& pot);

// ||u||_{W_Omega}: gradient integrated over the well closure, zeroth-order
// term over the well itself.
double womega_norm(const WeightedGraph& g, const VertexFunction& f, double p,
                   const VertexSubset& well);
double womega_norm_pow(const WeightedGraph& g, const VertexFunction& f, double p,
                       const VertexSubset& well);

/// Tag-dispatched norm; pot required for WLambda tags, wells for WOmega tags.
double norm(const WeightedGraph& g, const VertexFunction& f, const NormTag& tag,
            const ExponentConfig& cfg, const PotentialPair* pot = nullptr,
            const Wells* wl = nullptr);

struct EmbeddingConstants {
    double d1 = 0.0;  // (1/mu_min)^{1/p}
    double d2 = 0.0;  // (1/mu_min)^{1/q}
    double k_p_theta1 = 0.0;
    double k_q_theta2 = 0.0;
    double k_star_p_theta1 = 0.0;
    double k_star_q_theta2 = 0.0;
    double k_star = 0.0;  // max of the two starred constants
};

/// ||(a+1)^{-1}||_{1/(p-1)} = (int ((a+1)^{-1})^{1/(p-1)} dmu)^{p-1}.
double inverse_potential_norm(const WeightedGraph& g, const VertexFunction& pot, double p);

// Continuous/compact embedding constants with the case split theta >= p vs
// 1 <= theta < p (the latter the min of two expressions involving
// ||(a+1)^{-1}||_{1/(p-1)}). theta may be infinity for the starred constants.
EmbeddingConstants embedding_constants(const WeightedGraph& g, const PotentialPair& pot,
                                       const Wells& wl, const ExponentConfig& cfg,
                                       double theta1, double theta2);

}  // namespace gpq
