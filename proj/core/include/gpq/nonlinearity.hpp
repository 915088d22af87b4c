#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gpq/calculus.hpp"
#include "gpq/graph.hpp"

namespace gpq {

/// Nonlinear coupling F(x, t, s) with first and second partials in (t, s).
/// x is a dense vertex index. Implementations must be pure and finite on
/// finite inputs, with F(x, 0, 0) = 0.
class Nonlinearity {
public:
    virtual ~Nonlinearity() = default;
    virtual double f(int x, double t, double s) const = 0;
    virtual double ft(int x, double t, double s) const = 0;
    virtual double fs(int x, double t, double s) const = 0;
    virtual double ftt(int x, double t, double s) const = 0;
    virtual double fss(int x, double t, double s) const = 0;
    virtual double fts(int x, double t, double s) const = 0;
    virtual std::string name() const = 0;
};

/// Per-vertex growth-envelope coefficients C1, C2 of the (F3) bounds, with
/// the derived C3, C4 used by the xi formulas.
struct GrowthEnvelope {
    VertexFunction c1;
    VertexFunction c2;

    double c1_sup() const { return sup_norm(c1); }
    double c2_sup() const { return sup_norm(c2); }
    static double c3_factor(const ExponentConfig& cfg) {
        return std::max(1.0 + 1.0 / cfg.p + (cfg.q - 1.0) / cfg.q,
                        1.0 + 1.0 / cfg.q + (cfg.p - 1.0) / cfg.p);
    }
    static double c4_factor(const ExponentConfig& cfg) {
        return std::max(1.0 + 1.0 / cfg.r1 + (cfg.r2 - 1.0) / cfg.r2,
                        1.0 + 1.0 / cfg.r2 + (cfg.r1 - 1.0) / cfg.r1);
    }
    double c3_sup(const ExponentConfig& cfg) const { return c1_sup() * c3_factor(cfg); }
    double c4_sup(const ExponentConfig& cfg) const { return c2_sup() * c4_factor(cfg); }
};

// F(x,t,s) = (|t|^a + |s|^a) / (2a(1+beta)(1+d(x,x0))^2) *
//            (1 - 1/ln(e^2 + |t|^a + |s|^a)),
// with C1(x) = 1/((1+beta)(1+d)^2) and C2(x) = 2 beta/(1+d)^2.
class RemarkExample : public Nonlinearity {
public:
    RemarkExample(const WeightedGraph& g, double alpha, double beta, int base_vertex);
    double f(int x, double t, double s) const override;
    double ft(int x, double t, double s) const override;
    double fs(int x, double t, double s) const override;
    double ftt(int x, double t, double s) const override;
    double fss(int x, double t, double s) const override;
    double fts(int x, double t, double s) const override;
    std::string name() const override { return "remark_example"; }

    GrowthEnvelope envelope(const WeightedGraph& g) const;

private:
    double alpha_;
    double beta_;
    std::vector<double> scale_;  // 1/(2 alpha (1+beta) (1+d)^2) per vertex
    std::vector<double> dist_;
};

/// F = c (|t|^{k1}/k1 + |s|^{k2}/k2); decoupled power oracle.
class PurePower : public Nonlinearity {
public:
    PurePower(double kappa1, double kappa2, double c);
    double f(int x, double t, double s) const override;
    double ft(int x, double t, double s) const override;
    double fs(int x, double t, double s) const override;
    double ftt(int x, double t, double s) const override;
    double fss(int x, double t, double s) const override;
    double fts(int, double, double) const override { return 0.0; }
    std::string name() const override { return "pure_power"; }

    GrowthEnvelope envelope(const WeightedGraph& g, const ExponentConfig& cfg) const;

private:
    double k1_, k2_, c_;
};

struct CheckReport {
    std::string condition;
    double max_violation = 0.0;  // positive means violated by that amount
    double worst_t = 0.0, worst_s = 0.0;
    int worst_x = 0;
    bool pass = false;
};

struct SampleGrid {
    double t_max = 10.0;
    int lattice = 41;       // per axis, lattice^3 over (x-cycle, t, s)
    int random_points = 1000;
    std::uint64_t seed = 0;
};

/// (F2): alpha F <= F_t t + F_s s + varrho (|t|^p + |s|^q), sampled.
CheckReport check_f2(const Nonlinearity& nl, const WeightedGraph& g,
                     const ExponentConfig& cfg, const SampleGrid& samples);

/// (F3): partial-derivative growth bounds against the envelope, sampled.
CheckReport check_f3(const Nonlinearity& nl, const WeightedGraph& g,
                     const ExponentConfig& cfg, const GrowthEnvelope& env,
                     const SampleGrid& samples);

/// (F4): F_ts ts >= 0 and 0 < (beta-1)(F_t t + F_s s) < F_tt t^2 + F_ss s^2,
/// strict parts checked at nonzero sample points.
CheckReport check_f4(const Nonlinearity& nl, const WeightedGraph& g,
                     const ExponentConfig& cfg, const SampleGrid& samples);

// True iff 1/(1 + max{1/p + (q-1)/q, 1/q + (p-1)/p}) > 1/(1+beta); evaluated
// both directly and through the 1/gamma < beta + 1/beta - 1 hypothesis, which
// must agree.
bool check_a1(const ExponentConfig& cfg);

struct EnvelopeBounds {
    double f_bound;     // right side of the |F| envelope
    double pair_bound;  // right side of the |F_t t + F_s s| envelope
};

EnvelopeBounds envelope_bounds(const GrowthEnvelope& env, const ExponentConfig& cfg,
                               int x, double t, double s);

}  // namespace gpq
