#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gpq/io.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace gpq;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto d = fs::temp_directory_path() / "gpq_io_test";
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kGraphJson = R"({
  "vertices": [
    {"id": "v0", "mu": 2.0, "a": 0.0, "b": 1.5},
    {"id": "v1", "mu": 1.0, "a": 0.0, "b": 0.0},
    {"id": "v2", "mu": 1.0, "a": 3.0, "b": 0.0}
  ],
  "edges": [
    {"x": "v0", "y": "v1", "w": 1.0},
    {"x": "v1", "y": "v2", "w": 0.5}
  ]
})";

}  // namespace

TEST_CASE("graph files load with aligned potentials") {
    const auto dir = scratch_dir();
    write_file(dir / "g.json", kGraphJson);
    const auto gd = load_graph((dir / "g.json").string());
    REQUIRE(gd.graph->size() == 3);
    CHECK(gd.graph->mu(gd.graph->index_of("v0")) == 2.0);
    CHECK(gd.pot.a == VertexFunction{0.0, 0.0, 3.0});
    CHECK(gd.pot.b == VertexFunction{1.5, 0.0, 0.0});
    CHECK(gd.graph->connected());

    std::string neg = kGraphJson;
    neg.replace(neg.find("\"a\": 3.0"), 8, "\"a\": -1.0");
    write_file(dir / "neg.json", neg);
    CHECK_THROWS_AS(load_graph((dir / "neg.json").string()), ConfigError);

    write_file(dir / "broken.json", "{not json");
    CHECK_THROWS_AS(load_graph((dir / "broken.json").string()), ConfigError);
}

TEST_CASE("experiment configs load and validate") {
    const auto dir = scratch_dir();
    write_file(dir / "g.json", kGraphJson);
    write_file(dir / "exp.json", R"({
      "graph": "g.json",
      "exponents": {"p": 2.0, "q": 2.0, "alpha": 4.0, "varrho": 0.1,
                    "r1": 5.0, "r2": 5.0},
      "nonlinearity": {"type": "remark_example"},
      "solver": {"restarts": 4, "seed": 21},
      "lambdas": [1, 10, 100]
    })");
    const auto ex = load_experiment((dir / "exp.json").string());
    CHECK(ex.graph->size() == 3);
    CHECK(ex.cfg.p == 2.0);
    CHECK(ex.nl->name() == "remark_example");
    CHECK(ex.opts.restarts == 4);
    CHECK(ex.opts.seed == 21);
    CHECK(ex.lambdas == std::vector<double>{1.0, 10.0, 100.0});

    // lambda schedule defaults when omitted
    write_file(dir / "nolam.json", R"({
      "graph": "g.json",
      "exponents": {"p": 2.0, "q": 2.0, "alpha": 4.0, "varrho": 0.1,
                    "r1": 5.0, "r2": 5.0},
      "nonlinearity": {"type": "pure_power", "kappa1": 4, "kappa2": 4, "c": 1}
    })");
    const auto exd = load_experiment((dir / "nolam.json").string());
    CHECK(exd.lambdas == std::vector<double>{1.0, 10.0, 100.0, 1000.0, 10000.0});
    CHECK(exd.nl->name() == "pure_power");
}

TEST_CASE("config errors name the first violated assumption") {
    const auto dir = scratch_dir();
    write_file(dir / "g.json", kGraphJson);
    write_file(dir / "bad.json", R"({
      "graph": "g.json",
      "exponents": {"p": 2.0, "q": 2.0, "alpha": 1.5, "varrho": 0.1,
                    "r1": 5.0, "r2": 5.0},
      "nonlinearity": {"type": "remark_example"}
    })");
    try {
        load_experiment((dir / "bad.json").string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }

    write_file(dir / "nofield.json", R"({"graph": "g.json"})");
    CHECK_THROWS_AS(load_experiment((dir / "nofield.json").string()), ConfigError);

    write_file(dir / "badlam.json", R"({
      "graph": "g.json",
      "exponents": {"p": 2.0, "q": 2.0, "alpha": 4.0, "varrho": 0.1,
                    "r1": 5.0, "r2": 5.0},
      "nonlinearity": {"type": "pure_power", "kappa1": 4, "kappa2": 4, "c": 1},
      "lambdas": [0.5]
    })");
    CHECK_THROWS_AS(load_experiment((dir / "badlam.json").string()), ConfigError);
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        double v = uni(rng);
        if (i % 3 == 0) v *= 1e-12;
        if (i % 5 == 0) v = 1.0 / v;
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("sweep CSV round trip is lossless") {
    SweepResult sr;
    sr.m_omega = 0.123456789012345678;
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        SweepRow r;
        r.lambda = std::pow(10.0, i);
        r.m_lambda = uni(rng);
        r.gap = uni(rng) * 1e-13;
        r.penalty_u = uni(rng) * 1e-7;
        r.penalty_v = uni(rng) * 1e-7;
        r.tail_u = uni(rng) * 1e-9;
        r.tail_v = uni(rng) * 1e-9;
        r.sobolev_drift = uni(rng);
        r.kkt_residual = std::fabs(uni(rng)) * 1e-11;
        r.certified = true;
        sr.rows.push_back(r);
    }
    const std::string csv = sweep_csv(sr);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    CHECK(line.rfind("lambda,m_lambda,gap", 0) == 0);
    for (const auto& r : sr.rows) {
        REQUIRE(std::getline(in, line));
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
        REQUIRE(vals.size() == 11);
        CHECK(vals[0] == r.lambda);
        CHECK(vals[1] == r.m_lambda);
        CHECK(vals[2] == r.gap);
        CHECK(vals[3] == r.penalty_u);
        CHECK(vals[5] == r.tail_u);
        CHECK(vals[7] == r.sobolev_drift);
        CHECK(vals[8] == r.kkt_residual);
        CHECK(vals[9] == 1.0);
    }
}

TEST_CASE("ground state JSON carries the seed and per-vertex values") {
    const auto g = WeightedGraph::path(3);
    GroundState gs;
    gs.state.u = {0.1, 0.2, 0.3};
    gs.state.v = {0.0, -0.5, 0.25};
    gs.energy = 0.75;
    gs.certified = true;
    const auto j = nlohmann::json::parse(ground_state_json(g, gs, 42));
    CHECK(j["seed"] == 42);
    CHECK(j["certified"] == true);
    CHECK(j["energy"] == 0.75);
    CHECK(j["u"][g.id_of(1)] == 0.2);
    CHECK(j["v"][g.id_of(2)] == 0.25);
    CHECK(j["bounds"].contains("eta"));
}
