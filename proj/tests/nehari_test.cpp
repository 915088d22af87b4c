#include <cmath>

#include "doctest.h"
#include "gpq/nehari.hpp"
#include "helpers.hpp"

using namespace gpq;
using gpq::testing::random_state;

namespace {

struct SingleVertexFixture {
    WeightedGraph g = gpq::testing::single_vertex();
    PotentialPair pot = gpq::testing::zero_pot(g);
    ExponentConfig cfg = gpq::testing::quartic_cfg();
    PurePower nl{4.0, 4.0, 1.0};
    EnergyContext ctx = EnergyContext::full_graph(g, pot, cfg, nl, 1.0);
};

}  // namespace

TEST_CASE("fibering map closed forms on one vertex") {
    SingleVertexFixture fx;
    const PairState dir{{1.0}, {0.0}};
    // g(t) = t^2/2 - t^4/4, g'(t) = t - t^3
    for (double t : {0.25, 0.8, 1.5}) {
        CHECK(fiber_g(fx.ctx, dir, t) ==
              doctest::Approx(t * t / 2 - t * t * t * t / 4).epsilon(1e-14));
        CHECK(fiber_g_prime(fx.ctx, dir, t) ==
              doctest::Approx(t - t * t * t).epsilon(1e-14));
    }
    const auto fr = project_to_nehari(fx.ctx, dir);
    CHECK(fr.t0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fr.g_at_t0 == doctest::Approx(0.25).epsilon(1e-12));
    // doubled direction projects to half the scale
    const auto fr2 = project_to_nehari(fx.ctx, {{2.0}, {0.0}});
    CHECK(fr2.t0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fr2.g_at_t0 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("projection is scale covariant") {
    std::mt19937_64 rng(53);
    const gpq::testing::ReferenceInstance ref;
    const auto ctx =
        EnergyContext::full_graph(ref.g, ref.pot, ref.cfg, ref.nl, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const PairState dir = random_state(ref.g, rng);
        const auto base = project_to_nehari(ctx, dir);
        for (double c : {0.5, 2.0, 10.0}) {
            PairState sc = dir;
            for (double& w : sc.u) w *= c;
            for (double& w : sc.v) w *= c;
            const auto fr = project_to_nehari(ctx, sc);
            CHECK(fr.t0 * c == doctest::Approx(base.t0).epsilon(1e-10));
            CHECK(fr.g_at_t0 == doctest::Approx(base.g_at_t0).epsilon(1e-10));
        }
        // an already projected direction sits at t0 = 1
        PairState on = dir;
        for (double& w : on.u) w *= base.t0;
        for (double& w : on.v) w *= base.t0;
        CHECK(project_to_nehari(ctx, on).t0 == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fibering derivative changes sign exactly once") {
    std::mt19937_64 rng(59);
    const gpq::testing::ReferenceInstance ref;
    const auto ctx =
        EnergyContext::full_graph(ref.g, ref.pot, ref.cfg, ref.nl, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const PairState dir = random_state(ref.g, rng);
        const auto fr = project_to_nehari(ctx, dir);
        int changes = 0;
        double prev = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double t = fr.t0 * std::pow(10.0, -2.0 + 4.0 * i / 59.0);
            const double gp = fiber_g_prime(ctx, dir, t);
            if (i > 0 && gp * prev < 0.0) ++changes;
            prev = gp;
        }
        CHECK(changes == 1);
        // projected scale maximizes g along the ray
        for (int i = 0; i < 30; ++i) {
            const double t = fr.t0 * std::pow(10.0, -1.0 + 2.0 * i / 29.0);
            CHECK(fiber_g(ctx, dir, t) <= fr.g_at_t0 * (1.0 + 1e-10) + 1e-12);
        }
    }
}

TEST_CASE("subcritical reaction has no projection") {
    SingleVertexFixture fx;
    // F quadratic with tiny coefficient: g' is positive for all t > 0
    const PurePower weak(2.0, 2.0, 0.1);
    const auto ctx =
        EnergyContext::full_graph(fx.g, fx.pot, fx.cfg, weak, 1.0);
    CHECK_THROWS_AS(project_to_nehari(ctx, {{1.0}, {1.0}}), BracketFailure);
}

TEST_CASE("norm bracket constants") {
    SingleVertexFixture fx;
    const auto env = fx.nl.envelope(fx.g, fx.cfg);
    const auto b = compute_bounds(fx.ctx, env, 0.25);
    // L = (2 (1/4 / (1/2 - 1.1/4) + 1))^{1/2}
    CHECK(b.upper_L == doctest::Approx(2.05480466).epsilon(1e-6));
    CHECK(b.eta > 0.0);
    CHECK(b.xi > 0.0);
    CHECK(b.xi < b.upper_L);
    CHECK(0.25 >= b.eta);

    // ||C3|| >= 1 is rejected
    GrowthEnvelope big{VertexFunction{1.0}, VertexFunction{0.1}};
    CHECK_THROWS_AS(compute_bounds(fx.ctx, big, 0.25), InvalidEnvelope);

    // nonpositive bracket numerator: p = 2, q = 3, ||C1|| = 0.42 makes
    // 1/q - ||C1||(p-1)/p - ||C1||/q < 0 while ||C3|| stays below 1
    ExponentConfig cfg23{2.0, 3.0, 4.0, 0.1, 5.0, 5.0};
    const auto ctx23 =
        EnergyContext::full_graph(fx.g, fx.pot, cfg23, fx.nl, 1.0);
    GrowthEnvelope mid{VertexFunction{0.42}, VertexFunction{0.1}};
    CHECK(mid.c3_sup(cfg23) < 1.0);
    CHECK_THROWS_AS(compute_bounds(ctx23, mid, 0.25), InvalidEnvelope);

    // 1/beta <= (1 + varrho)/alpha is rejected
    ExponentConfig flat = fx.cfg;
    flat.varrho = 3.5;
    const auto ctxf =
        EnergyContext::full_graph(fx.g, fx.pot, flat, fx.nl, 1.0);
    CHECK_THROWS_AS(compute_bounds(ctxf, env, 0.25), InvalidEnvelope);
}

TEST_CASE("single-vertex ground state") {
    SingleVertexFixture fx;
    const auto env = fx.nl.envelope(fx.g, fx.cfg);
    SolveOptions opts;
    opts.seed = 1;
    const auto gs = solve_ground_state(fx.ctx, env, opts);
    CHECK(gs.certified);
    CHECK(gs.energy == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(gs.kkt_residual <= opts.tol_res);
    CHECK(gs.k_prime < 0.0);
    CHECK(gs.energy >= gs.bounds.eta * (1.0 - 1e-9));
    const double pn = pair_norm(fx.ctx, gs.state);
    CHECK(pn >= gs.bounds.xi * (1.0 - 1e-9));
    CHECK(pn <= gs.bounds.upper_L * (1.0 + 1e-9));
    // minimizer concentrates all mass in one component
    const double m = std::max(std::fabs(gs.state.u[0]), std::fabs(gs.state.v[0]));
    CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solver is deterministic for a fixed seed") {
    const gpq::testing::ReferenceInstance ref;
    const auto ctx =
        EnergyContext::full_graph(ref.g, ref.pot, ref.cfg, ref.nl, 10.0);
    SolveOptions opts;
    opts.seed = 7;
    opts.restarts = 8;
    const auto a = solve_ground_state(ctx, ref.env, opts);
    const auto b = solve_ground_state(ctx, ref.env, opts);
    CHECK(a.energy == b.energy);
    CHECK(a.state.u == b.state.u);
    CHECK(a.state.v == b.state.v);
    CHECK(a.restarts_used == b.restarts_used);
}

TEST_CASE("reference instance ground state satisfies the certificates") {
    const gpq::testing::ReferenceInstance ref;
    const auto ctx =
        EnergyContext::full_graph(ref.g, ref.pot, ref.cfg, ref.nl, 10.0);
    SolveOptions opts;
    opts.seed = 3;
    const auto gs = solve_ground_state(ctx, ref.env, opts);
    CHECK(gs.certified);
    CHECK(gs.energy >= gs.bounds.eta * (1.0 - 1e-9));
    CHECK(gs.k_prime < 0.0);
    CHECK(std::fabs(nehari_k(ctx, gs.state)) <=
          opts.tol_k * (1.0 + pair_norm(ctx, gs.state)));
    // every accepted iterate obeys the on-manifold coercivity estimate
    const double cp = 1.0 / ref.cfg.p - (1.0 + ref.cfg.varrho) / ref.cfg.alpha;
    const double cq = 1.0 / ref.cfg.q - (1.0 + ref.cfg.varrho) / ref.cfg.alpha;
    REQUIRE(cp > 0.0);
    REQUIRE(cq > 0.0);
    CHECK_FALSE(gs.descent_trace.empty());
    for (const auto& row : gs.descent_trace)
        CHECK(cp * row[1] + cq * row[2] <= row[0] * (1.0 + 1e-9) + 1e-12);
}

TEST_CASE("two-vertex ground level matches the homogeneous closed form") {
    // p = q = 2, quartic reaction: along each direction the projected energy
    // is A^2/(4B) with A the norm square sum and B the quartic integral
    const auto g = WeightedGraph::path(2);
    const auto pot = gpq::testing::zero_pot(g);
    const ExponentConfig cfg = gpq::testing::quartic_cfg();
    const PurePower nl(4.0, 4.0, 1.0);
    const auto ctx = EnergyContext::full_graph(g, pot, cfg, nl, 1.0);

    double best = 1e300;
    const int n = 21;
    auto coord = [&](int i) { return -1.0 + 2.0 * i / (n - 1); };
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int j0 = 0; j0 < n; ++j0)
                for (int j1 = 0; j1 < n; ++j1) {
                    const double u0 = coord(i0), u1 = coord(i1);
                    const double v0 = coord(j0), v1 = coord(j1);
                    const double du = u1 - u0, dv = v1 - v0;
                    const double A = du * du + u0 * u0 + u1 * u1 + dv * dv +
                                     v0 * v0 + v1 * v1;
                    const double B = u0 * u0 * u0 * u0 + u1 * u1 * u1 * u1 +
                                     v0 * v0 * v0 * v0 + v1 * v1 * v1 * v1;
                    if (B > 1e-12) best = std::min(best, A * A / (4 * B));
                }
    SolveOptions opts;
    opts.seed = 11;
    const auto gs = solve_ground_state(ctx, nl.envelope(g, cfg), opts);
    CHECK(gs.certified);
    CHECK(gs.energy == doctest::Approx(best).epsilon(5e-3));
    CHECK(gs.energy <= best * (1.0 + 1e-9));  // grid only overestimates
}
