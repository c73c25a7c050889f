// momentls: command-line front end.
//
//   momentls simulate ar1 --rho 0.9 --tau 1 -M 4000 --seed 7 --out chain.txt
//   momentls simulate mh --d 100 --model-seed 1 -M 4000 --seed 7 --out chain.txt
//   momentls estimate --input chain.txt --method momentls --delta 0.1
//   momentls project --input lags.txt --delta 0.1
//   momentls truth ar1 --rho 0.9 --tau 1 --lags 20 -M 64000
//   momentls experiment --config exp.cfg --out results.csv
//
// Exit status: 0 success, 1 data error, 2 usage error.

#include "momentls/autocov.hpp"
#include "momentls/chains.hpp"
#include "momentls/harness.hpp"
#include "momentls/oracle.hpp"
#include "momentls/projection.hpp"
#include "momentls/rivals.hpp"
#include "momentls/textio.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace momentls;

namespace
{

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void print_kv(std::ostream& out, const std::string& key, double v)
{
    out << key << ": " << format_double(v) << '\n';
}

void print_measure(std::ostream& out, const DiscreteMeasure& m)
{
    out << "atoms: " << m.size() << '\n';
    for (const auto& a : m.atoms())
        out << "atom: " << format_double(a.location) << ' ' << format_double(a.weight) << '\n';
}

void print_projection(std::ostream& out, const ProjectionResult& p, const LagSequence& r, int probe)
{
    print_kv(out, "sigma2", p.sigma2);
    print_kv(out, "objective", p.objective);
    out << "iterations: " << p.iterations << '\n';
    print_kv(out, "kkt_worst", p.kkt_worst);
    print_kv(out, "kkt_tol", p.kkt_tol);
    const KktReport k = kkt_report(p, r, probe);
    print_kv(out, "kkt_min_directional", k.min_directional);
    print_kv(out, "kkt_complementarity", k.complementarity);
    print_kv(out, "kkt_support_stationarity", k.support_stationarity);
    print_kv(out, "total_mass", p.measure.total_mass());
    print_measure(out, p.measure);
}

void print_truth(std::ostream& out, const TruthBundle& t)
{
    print_kv(out, "sigma2", t.sigma2);
    print_kv(out, "delta0", t.delta0);
    print_kv(out, "gamma_bs", t.gamma_bs);
    out << "b_bm: " << t.batch.bm << '\n';
    out << "b_obm: " << t.batch.obm << '\n';
    out << "b_bartlett: " << t.batch.bartlett() << '\n';
    print_measure(out, t.F);
    for (Index k = 0; k < t.gamma.size(); ++k)
        out << "gamma: " << k << ' ' << format_double(t.gamma[k]) << '\n';
}

std::ostream& open_out(const std::string& path, std::ofstream& file)
{
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw DataError("cannot write " + path);
    return file;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moment least-squares autocovariance and asymptotic variance estimation"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate a chain and write g(X_t), one per line");
    sim->require_subcommand(1);
    double rho = 0.9, tau = 1.0;
    Index M = 4000, d = 100, lags = 20;
    std::uint64_t seed = 1, model_seed = 1;
    std::string out_path;
    auto* sim_ar1 = sim->add_subcommand("ar1", "Stationary AR(1)");
    auto* sim_mh = sim->add_subcommand("mh", "Random discrete-state Metropolis-Hastings chain");
    for (auto* s : {sim_ar1, sim_mh}) {
        s->add_option("-M,--length", M, "Chain length")->check(CLI::Range(Index{2}, Index{1} << 40));
        s->add_option("--seed", seed, "Chain seed");
        s->add_option("--out", out_path, "Output file (default stdout)");
    }

    // truth
    auto* truth = app.add_subcommand("truth", "Print exact autocovariance, measure and constants");
    truth->require_subcommand(1);
    auto* truth_ar1 = truth->add_subcommand("ar1", "Stationary AR(1)");
    auto* truth_mh = truth->add_subcommand("mh", "Random discrete-state Metropolis-Hastings chain");
    for (auto* s : {truth_ar1, truth_mh}) {
        s->add_option("--lags", lags, "Number of autocovariance lags")->check(CLI::PositiveNumber);
        s->add_option("-M,--length", M, "Chain length for batch sizes")->check(CLI::PositiveNumber);
        s->add_option("--out", out_path, "Output file (default stdout)");
    }
    for (auto* s : {sim_ar1, truth_ar1}) {
        s->add_option("--rho", rho, "Autoregression coefficient");
        s->add_option("--tau", tau, "Innovation standard deviation");
    }
    for (auto* s : {sim_mh, truth_mh}) {
        s->add_option("--d", d, "Number of states")->check(CLI::Range(Index{2}, Index{100000}));
        s->add_option("--model-seed", model_seed, "Seed for the random model");
    }

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate the asymptotic variance of a chain");
    std::string input, method = "momentls", init = "emp";
    std::optional<double> delta;
    std::optional<Index> batch;
    int grid = 1000, probe = 2001;
    est->add_option("--input", input, "Chain sample file")->required();
    est->add_option("--method", method, "Estimator")
        ->check(CLI::IsMember({"momentls", "empirical", "bartlett", "bm", "obm", "init-pos",
                               "init-mono", "init-conv"}));
    est->add_option("--init", init, "Initial sequence for momentls")
        ->check(CLI::IsMember({"emp", "bartlett"}));
    est->add_option("--delta", delta, "Support half-gap delta in (0, 1] (default 0.05)");
    est->add_option("--batch", batch, "Batch size / window threshold")->check(CLI::PositiveNumber);
    est->add_option("--grid", grid, "Direction-search grid size")->check(CLI::Range(3, 1000000));
    est->add_option("--out", out_path, "Report file (default stdout)");

    // project
    auto* proj = app.add_subcommand("project", "Project a lag sequence (r(0), r(1), ... one per line)");
    proj->add_option("--input", input, "Lag sequence file")->required();
    proj->add_option("--delta", delta, "Support half-gap delta in (0, 1] (default 0.05)");
    proj->add_option("--grid", grid, "Direction-search grid size")->check(CLI::Range(3, 1000000));
    proj->add_option("--probe", probe, "Probe grid for the optimality report")->check(CLI::PositiveNumber);
    proj->add_option("--out", out_path, "Report file (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a replicated comparison experiment");
    std::string config, summary_path;
    unsigned threads = 0;
    bool timings = false;
    exp->add_option("--config", config, "Config file (key = value)")->required();
    exp->add_option("--out", out_path, "Per-replication results CSV")->required();
    exp->add_option("--summary", summary_path, "Summary CSV (default <out>.summary.csv)");
    exp->add_option("--threads", threads, "Worker threads (0 = all cores)");
    exp->add_flag("--timings", timings, "Add a runtime column (output no longer byte-reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (delta && !(*delta > 0.0 && *delta <= 1.0))
            throw UsageError("--delta must lie in (0, 1]");

        if (sim->parsed()) {
            std::vector<double> x;
            if (sim_ar1->parsed()) {
                x = simulate_ar1({rho, tau, M, seed});
            } else {
                const auto model = build_random_mh(d, model_seed);
                x = observe(model, simulate_discrete(model, M, seed));
            }
            std::ofstream f;
            write_values(open_out(out_path, f), x);
        } else if (truth->parsed()) {
            const TruthBundle t = truth_ar1->parsed()
                                      ? ar1_truth(rho, tau, lags, M)
                                      : discrete_truth(build_random_mh(d, model_seed), lags, M);
            std::ofstream f;
            print_truth(open_out(out_path, f), t);
        } else if (est->parsed()) {
            const std::vector<double> x = read_values_file(input);
            std::ofstream f;
            std::ostream& out = open_out(out_path, f);
            auto need_batch = [&] {
                if (!batch) throw UsageError("--batch is required for --method " + method);
                return *batch;
            };
            out << "method: " << method << '\n';
            out << "samples: " << x.size() << '\n';
            if (method == "momentls") {
                const LagSequence r0 = empirical_autocov(x);
                const LagSequence r = init == "bartlett" ? apply_window(r0, WindowSpec::bartlett(need_batch()))
                                                         : r0;
                ProjectionConfig cfg;
                cfg.delta = delta.value_or(cfg.delta);
                cfg.grid_size = grid;
                out << "init: " << init << '\n';
                print_kv(out, "delta", cfg.delta);
                print_projection(out, project(r, cfg), r, probe);
            } else if (method == "empirical") {
                print_kv(out, "sigma2", empirical_autocov(x).two_sided_sum());
            } else if (method == "bartlett") {
                print_kv(out, "sigma2", spectral_bartlett(x, need_batch()));
            } else if (method == "bm") {
                print_kv(out, "sigma2", batch_means(x, need_batch()));
            } else if (method == "obm") {
                print_kv(out, "sigma2", overlapping_batch_means(x, need_batch()));
            } else {
                const InitSeqType t = method == "init-pos"    ? InitSeqType::positive
                                      : method == "init-mono" ? InitSeqType::monotone
                                                              : InitSeqType::convex;
                print_kv(out, "sigma2", initial_seq(x, t));
            }
        } else if (proj->parsed()) {
            const std::vector<double> v = read_values_file(input);
            if (v.empty()) throw DataError(input + ": no values");
            std::ofstream f;
            std::ostream& out = open_out(out_path, f);
            const LagSequence r(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size())));
            ProjectionConfig cfg;
            cfg.delta = delta.value_or(cfg.delta);
            cfg.grid_size = grid;
            const auto rep = validate_initial_conditions(r);
            if (!rep.peak_at_zero)
                std::cerr << "warning: |r(" << rep.first_violation << ")| > r(0)\n";
            print_kv(out, "delta", cfg.delta);
            print_projection(out, project(r, cfg), r, probe);
        } else if (exp->parsed()) {
            const ExperimentConfig cfg = parse_config_file(config);
            const auto rows = run_experiment(cfg, threads);
            {
                std::ofstream f(out_path);
                if (!f) throw DataError("cannot write " + out_path);
                write_rows_csv(f, rows, timings);
            }
            const std::string sp = summary_path.empty() ? out_path + ".summary.csv" : summary_path;
            std::ofstream s(sp);
            if (!s) throw DataError("cannot write " + sp);
            write_summary_csv(s, aggregate(rows));
            std::cout << "rows: " << rows.size() << '\n' << "results: " << out_path << '\n'
                      << "summary: " << sp << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
