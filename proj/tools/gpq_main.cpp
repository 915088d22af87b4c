#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gpq/io.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content, bool force) {
    if (fs::exists(path) && !force)
        throw std::runtime_error(path.string() +
                                 " exists; pass --force to overwrite");
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

fs::path output_dir(const gpq::Experiment& ex, const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (!ex.out_dir.empty()) return ex.out_dir;
    return "out";
}

int cmd_validate(const std::string& config) {
    bool ok = true;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        ok = ok && pass;
    };

    gpq::Experiment ex;
    try {
        ex = gpq::load_experiment(config);
    } catch (const std::exception& e) {
        std::cout << "FAIL load: " << e.what() << "\n";
        return 1;
    }
    report("load", true, "");

    const auto gv = gpq::validate_graph(*ex.graph, 1e9);
    report("graph", gv.pass(), gv.violations.empty() ? "" : gv.violations.front());
    try {
        gpq::wells(*ex.graph, ex.pot);
        report("wells", true, "");
    } catch (const gpq::WellError& e) {
        report("wells", false, e.what());
    }
    report("(A1)", gpq::check_a1(ex.cfg), "");

    const gpq::SampleGrid sg;
    const auto f2 = gpq::check_f2(*ex.nl, *ex.graph, ex.cfg, sg);
    report("(F2)", f2.pass, "max violation " + gpq::format_double(f2.max_violation));
    const auto f3 = gpq::check_f3(*ex.nl, *ex.graph, ex.cfg, ex.env, sg);
    report("(F3)", f3.pass, "max violation " + gpq::format_double(f3.max_violation));
    const auto f4 = gpq::check_f4(*ex.nl, *ex.graph, ex.cfg, sg);
    report("(F4)", f4.pass, "max violation " + gpq::format_double(f4.max_violation));
    return ok ? 0 : 1;
}

int cmd_solve(const std::string& config, double lambda, long long seed,
              const std::string& out, bool force) {
    gpq::Experiment ex = gpq::load_experiment(config);
    if (seed >= 0) ex.opts.seed = static_cast<std::uint64_t>(seed);
    if (!(lambda >= 1.0)) {
        std::cerr << "error: lambda must be >= 1\n";
        return 1;
    }
    const auto ctx =
        gpq::EnergyContext::full_graph(*ex.graph, ex.pot, ex.cfg, *ex.nl, lambda);
    const gpq::GroundState gs = gpq::solve_ground_state(ctx, ex.env, ex.opts);

    const fs::path dir = output_dir(ex, out);
    write_file(dir / "ground_state.json",
               gpq::ground_state_json(*ex.graph, gs, ex.opts.seed), force);
    std::ostringstream os;
    os << "lambda " << gpq::format_double(lambda) << "\n"
       << "m_lambda " << gpq::format_double(gs.energy) << "\n"
       << "nehari_residual " << gpq::format_double(gs.nehari_residual) << "\n"
       << "kkt_residual " << gpq::format_double(gs.kkt_residual) << "\n"
       << "eta " << gpq::format_double(gs.bounds.eta) << "\n"
       << "xi " << gpq::format_double(gs.bounds.xi) << "\n"
       << "upper_L " << gpq::format_double(gs.bounds.upper_L) << "\n"
       << "certified " << (gs.certified ? 1 : 0) << "\n";
    write_file(dir / "summary.txt", os.str(), force);
    std::cout << "m_lambda = " << gpq::format_double(gs.energy)
              << (gs.certified ? " (certified)" : " (NOT certified)") << "\n";
    return gs.certified ? 0 : 3;
}

int cmd_sweep(const std::string& config, long long seed, const std::string& out,
              bool force, double tol) {
    gpq::Experiment ex = gpq::load_experiment(config);
    if (seed >= 0) ex.opts.seed = static_cast<std::uint64_t>(seed);
    if (ex.lambdas.size() < 3) {
        std::cerr << "error: sweep needs >= 3 lambda values\n";
        return 1;
    }
    const gpq::ProblemInstance inst = ex.instance();
    const gpq::SweepResult sr = gpq::run_sweep(inst, ex.lambdas, ex.opts);
    const gpq::ConvergenceReport rep = gpq::convergence_report(sr, tol);

    const fs::path dir = output_dir(ex, out);
    write_file(dir / "sweep.csv", gpq::sweep_csv(sr), force);
    write_file(dir / "summary.json", gpq::sweep_summary_json(sr, rep, ex.opts.seed),
               force);
    std::ostringstream gap;
    gap << "lambda,gap\n";
    for (const auto& r : sr.rows)
        gap << gpq::format_double(r.lambda) << ',' << gpq::format_double(r.gap)
            << '\n';
    write_file(dir / "gap_vs_lambda.csv", gap.str(), force);

    for (const auto& m : rep.metrics)
        std::cout << (m.pass ? "PASS " : "FAIL ") << m.name << " = "
                  << gpq::format_double(m.value) << "\n";
    return rep.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground states of (p,q)-Laplacian systems on weighted graphs"};
    app.require_subcommand(1);

    std::string config, out;
    double lambda = 1.0, tol = 0.02;
    long long seed = -1;
    bool force = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "experiment config path")->required();
        sub->add_option("--seed", seed, "override RNG seed");
        sub->add_option("--out", out, "output directory");
        sub->add_flag("--force", force, "overwrite existing outputs");
    };
    CLI::App* validate = app.add_subcommand("validate", "check all assumptions");
    validate->add_option("--config", config, "experiment config path")->required();
    CLI::App* solve = app.add_subcommand("solve", "one ground-state solve");
    add_common(solve);
    solve->add_option("--lambda", lambda, "potential scale, >= 1");
    CLI::App* sweep = app.add_subcommand("sweep", "lambda sweep + limit problem");
    add_common(sweep);
    sweep->add_option("--tol", tol, "convergence report tolerance");

    CLI11_PARSE(app, argc, argv);
    try {
        if (validate->parsed()) return cmd_validate(config);
        if (solve->parsed()) return cmd_solve(config, lambda, seed, out, force);
        if (sweep->parsed()) return cmd_sweep(config, seed, out, force, tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
