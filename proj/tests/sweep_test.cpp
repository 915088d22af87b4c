#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace gpq;

TEST_CASE("sweep over a degenerate instance with global wells") {
    // a = b = 0 everywhere: the penalty term vanishes and every level equals
    // the limit level, so all gaps are solver noise
    const auto g = WeightedGraph::path(2);
    const auto pot = gpq::testing::zero_pot(g);
    const ExponentConfig cfg = gpq::testing::quartic_cfg();
    const PurePower nl(4.0, 4.0, 1.0);
    const ProblemInstance inst{&g, &pot, cfg, &nl, nl.envelope(g, cfg)};
    SolveOptions opts;
    opts.seed = 9;
    const auto sr = run_sweep(inst, {1.0, 10.0, 100.0}, opts);
    REQUIRE(sr.rows.size() == 3);
    CHECK(sr.m_omega > 0.0);
    for (const auto& row : sr.rows) {
        CHECK_FALSE(row.failed);
        CHECK(row.certified);
        CHECK(std::fabs(row.gap) <= 1e-8 * sr.m_omega);
        CHECK(row.penalty_u == 0.0);
        CHECK(row.penalty_v == 0.0);
        CHECK(row.tail_u == 0.0);
        CHECK(row.tail_v == 0.0);
    }
    const auto rep = convergence_report(sr, 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("sweep on the reference instance concentrates in the wells") {
    const gpq::testing::ReferenceInstance ref;
    SolveOptions opts;
    opts.seed = 13;
    opts.restarts = 8;
    const auto sr = run_sweep(ref.instance(), {10.0, 100.0, 1e4}, opts);
    REQUIRE(sr.rows.size() == 3);
    for (const auto& row : sr.rows) {
        CHECK_FALSE(row.failed);
        CHECK(row.certified);
        CHECK(row.gap >= -1e-10);
        // the ground state here is semi-trivial: all mass in one component
        CHECK(row.mass_u + row.mass_v > 0.0);
    }
    const auto& first = sr.rows.front();
    const auto& last = sr.rows.back();
    // the off-well mass and the penalty must decay as lambda grows
    CHECK(last.tail_u < first.tail_u);
    CHECK(last.tail_v <= first.tail_v);
    CHECK(last.penalty_u < first.penalty_u);
    CHECK(last.gap <= first.gap * (1.0 + 1e-9) + 1e-12);
    const auto rep = convergence_report(sr, 0.1);
    CHECK(rep.pass);
    for (const auto& m : rep.metrics) CHECK(m.pass);
}

TEST_CASE("lambda schedule validation") {
    const gpq::testing::ReferenceInstance ref;
    SolveOptions opts;
    CHECK_THROWS_AS(run_sweep(ref.instance(), {10.0, 1.0}, opts),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(ref.instance(), {0.5, 1.0}, opts),
                    std::invalid_argument);
}

TEST_CASE("convergence report flags a negative gap") {
    SweepResult sr;
    sr.m_omega = 1.0;
    for (double lam : {1.0, 10.0, 100.0}) {
        SweepRow row;
        row.lambda = lam;
        row.m_lambda = 1.0;
        row.gap = 0.0;
        row.mass_u = row.mass_v = 1.0;
        row.certified = true;
        sr.rows.push_back(row);
    }
    sr.rows[1].gap = -1.0;
    sr.rows[1].m_lambda = 2.0;
    const auto rep = convergence_report(sr, 0.1);
    CHECK_FALSE(rep.pass);
    bool flagged = false;
    for (const auto& m : rep.metrics)
        if (!m.pass && m.name.find("gap") != std::string::npos) flagged = true;
    CHECK(flagged);

    // fewer than three lambdas cannot support a trend
    SweepResult tiny = sr;
    tiny.rows.resize(2);
    CHECK_THROWS_AS(convergence_report(tiny, 0.1), std::invalid_argument);
}
