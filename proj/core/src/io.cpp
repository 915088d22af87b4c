#include "gpq/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gpq {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(where + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw ConfigError(where + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

GraphData load_graph(const std::string& path) {
    const json j = read_json(path);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigError(path + ": missing 'vertices' array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ConfigError(path + ": missing 'edges' array");

    std::vector<std::pair<std::string, double>> vs;
    std::vector<double> a, b;
    for (const json& v : j["vertices"]) {
        const std::string id = require_string(v, "id", path);
        const double mu = require_number(v, "mu", path);
        const double av = require_number(v, "a", path);
        const double bv = require_number(v, "b", path);
        if (!(av >= 0.0) || !(bv >= 0.0))
            throw ConfigError(path + ": potential negative at vertex " + id);
        vs.emplace_back(id, mu);
        a.push_back(av);
        b.push_back(bv);
    }
    std::vector<std::tuple<std::string, std::string, double>> es;
    for (const json& e : j["edges"])
        es.emplace_back(require_string(e, "x", path), require_string(e, "y", path),
                        require_number(e, "w", path));

    GraphData gd;
    try {
        gd.graph = std::make_unique<WeightedGraph>(std::move(vs), es);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    // vertex order in the file defines the dense indexing, so a/b line up
    gd.pot.a = std::move(a);
    gd.pot.b = std::move(b);
    return gd;
}

Experiment load_experiment(const std::string& config_path) {
    const json j = read_json(config_path);
    const std::string where = config_path;

    Experiment ex;
    const std::string graph_rel = require_string(j, "graph", where);
    const auto graph_path =
        std::filesystem::path(config_path).parent_path() / graph_rel;
    GraphData gd = load_graph(graph_path.string());
    ex.graph = std::move(gd.graph);
    ex.pot = std::move(gd.pot);

    if (!j.contains("exponents")) throw ConfigError(where + ": missing 'exponents'");
    const json& je = j["exponents"];
    ex.cfg.p = require_number(je, "p", where);
    ex.cfg.q = require_number(je, "q", where);
    ex.cfg.alpha = require_number(je, "alpha", where);
    ex.cfg.varrho = require_number(je, "varrho", where);
    ex.cfg.r1 = require_number(je, "r1", where);
    ex.cfg.r2 = require_number(je, "r2", where);
    const auto viols = ex.cfg.violations();
    if (!viols.empty()) throw ConfigError(where + ": " + viols.front());

    if (!j.contains("nonlinearity"))
        throw ConfigError(where + ": missing 'nonlinearity'");
    const json& jn = j["nonlinearity"];
    const std::string type = require_string(jn, "type", where);
    if (type == "remark_example") {
        int base = 0;
        if (jn.contains("base_vertex")) {
            base = ex.graph->index_of(jn["base_vertex"].get<std::string>());
        } else {
            for (int x = 1; x < ex.graph->size(); ++x)
                if (ex.graph->id_of(x) < ex.graph->id_of(base)) base = x;
        }
        const double alpha =
            jn.contains("alpha") ? jn["alpha"].get<double>() : ex.cfg.alpha;
        auto nl = std::make_unique<RemarkExample>(*ex.graph, alpha, ex.cfg.beta(), base);
        ex.env = nl->envelope(*ex.graph);
        ex.nl = std::move(nl);
    } else if (type == "pure_power") {
        auto nl = std::make_unique<PurePower>(require_number(jn, "kappa1", where),
                                              require_number(jn, "kappa2", where),
                                              require_number(jn, "c", where));
        ex.env = nl->envelope(*ex.graph, ex.cfg);
        ex.nl = std::move(nl);
    } else {
        throw ConfigError(where + ": unknown nonlinearity type '" + type + "'");
    }

    if (j.contains("solver")) {
        const json& js = j["solver"];
        if (js.contains("restarts")) ex.opts.restarts = js["restarts"].get<int>();
        if (js.contains("max_iters")) ex.opts.max_iters = js["max_iters"].get<int>();
        if (js.contains("tol_k")) ex.opts.tol_k = js["tol_k"].get<double>();
        if (js.contains("tol_res")) ex.opts.tol_res = js["tol_res"].get<double>();
        if (js.contains("seed")) ex.opts.seed = js["seed"].get<std::uint64_t>();
    }

    if (j.contains("lambdas")) {
        for (const json& l : j["lambdas"]) {
            const double v = l.get<double>();
            if (!(v >= 1.0)) throw ConfigError(where + ": lambda must be >= 1");
            ex.lambdas.push_back(v);
        }
    } else {
        ex.lambdas = {1.0, 10.0, 100.0, 1000.0, 10000.0};
    }
    if (j.contains("output_dir")) ex.out_dir = j["output_dir"].get<std::string>();
    return ex;
}

std::string ground_state_json(const WeightedGraph& g, const GroundState& gs,
                              std::uint64_t seed) {
    json ju = json::object(), jv = json::object();
    for (int x = 0; x < g.size(); ++x) {
        ju[g.id_of(x)] = gs.state.u[x];
        jv[g.id_of(x)] = gs.state.v[x];
    }
    const json out = {
        {"u", ju},
        {"v", jv},
        {"energy", gs.energy},
        {"lambda", gs.lambda},
        {"nehari_residual", gs.nehari_residual},
        {"kkt_residual", gs.kkt_residual},
        {"k_prime", gs.k_prime},
        {"bounds",
         {{"eta", gs.bounds.eta},
          {"rho", gs.bounds.rho},
          {"xi", gs.bounds.xi},
          {"upper_L", gs.bounds.upper_L}}},
        {"restarts_used", gs.restarts_used},
        {"certified", gs.certified},
        {"seed", seed},
    };
    return out.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& sr) {
    std::ostringstream os;
    os << "lambda,m_lambda,gap,penalty_u,penalty_v,tail_u,tail_v,"
          "sobolev_drift,kkt_residual,certified,failed\n";
    for (const SweepRow& r : sr.rows) {
        os << format_double(r.lambda) << ',' << format_double(r.m_lambda) << ','
           << format_double(r.gap) << ',' << format_double(r.penalty_u) << ','
           << format_double(r.penalty_v) << ',' << format_double(r.tail_u) << ','
           << format_double(r.tail_v) << ',' << format_double(r.sobolev_drift) << ','
           << format_double(r.kkt_residual) << ',' << (r.certified ? 1 : 0) << ','
           << (r.failed ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string sweep_summary_json(const SweepResult& sr, const ConvergenceReport& rep,
                               std::uint64_t seed) {
    json flags = json::object();
    for (const auto& m : rep.metrics)
        flags[m.name] = {{"value", m.value}, {"tol", m.tol}, {"pass", m.pass}};
    const json out = {
        {"m_omega", sr.m_omega},
        {"seed", seed},
        {"pass", rep.pass},
        {"pass_flags", flags},
    };
    return out.dump(2) + "\n";
}

}  // namespace gpq
