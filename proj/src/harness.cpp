#include "momentls/harness.hpp"

#include "momentls/autocov.hpp"
#include "momentls/chains.hpp"
#include "momentls/oracle.hpp"
#include "momentls/projection.hpp"
#include "momentls/rivals.hpp"
#include "momentls/rng.hpp"
#include "momentls/textio.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace momentls
{

namespace
{

constexpr std::pair<EstimatorId, std::string_view> kNames[] = {
    {EstimatorId::empirical, "empirical"},
    {EstimatorId::bartlett, "bartlett"},
    {EstimatorId::momentls_emp, "momentls-emp"},
    {EstimatorId::momentls_bartlett, "momentls-bartlett"},
    {EstimatorId::bm, "bm"},
    {EstimatorId::obm, "obm"},
    {EstimatorId::init_pos, "init-pos"},
    {EstimatorId::init_mono, "init-mono"},
    {EstimatorId::init_conv, "init-conv"},
};

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& v, const std::string& where)
{
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || !std::isfinite(x))
        throw std::invalid_argument(where + ": expected a number, got '" + v + "'");
    return x;
}

long long parse_int(const std::string& v, const std::string& where)
{
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty())
        throw std::invalid_argument(where + ": expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& v, const std::string& where)
{
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty() || v[0] == '-')
        throw std::invalid_argument(where + ": expected an unsigned integer, got '" + v + "'");
    return x;
}

// Everything a replication needs that depends only on the config and M.
struct Plan
{
    DiscreteMeasure F;
    double sigma2 = 0.0;
    double delta = 0.05;
    std::map<Index, BatchSizes> batch;
    std::optional<DiscreteChainModel> model;
};

Plan make_plan(const ExperimentConfig& cfg)
{
    Plan plan;
    TruthBundle truth;
    if (const auto* ar = std::get_if<Ar1Setting>(&cfg.setting)) {
        truth = ar1_truth(ar->rho, ar->tau, 1, 0);
    } else {
        const auto& mh = std::get<DiscreteMhSetting>(cfg.setting);
        plan.model = build_random_mh(mh.d, mh.model_seed);
        truth = discrete_truth(*plan.model, 1, 0);
    }
    plan.F = truth.F;
    plan.sigma2 = truth.sigma2;
    plan.delta = cfg.delta ? *cfg.delta : oracle_delta(truth.F);
    for (Index M : cfg.chain_lengths) {
        if (cfg.batch) {
            const Index b = std::min(*cfg.batch, M - 1);
            plan.batch[M] = {b, b};
        } else if (truth.sigma2 > 0.0) {
            plan.batch[M] = optimal_batch_sizes(truth.sigma2, truth.gamma_bs, M);
        } else {
            plan.batch[M] = {1, 1};
        }
    }
    return plan;
}

std::vector<double> simulate(const ExperimentConfig& cfg, const Plan& plan, Index M,
                             std::uint64_t seed)
{
    if (const auto* ar = std::get_if<Ar1Setting>(&cfg.setting))
        return simulate_ar1({ar->rho, ar->tau, M, seed});
    return observe(*plan.model, simulate_discrete(*plan.model, M, seed));
}

std::vector<MetricsRow> run_replication(const ExperimentConfig& cfg, const Plan& plan, Index M,
                                        int rep)
{
    const std::vector<double> x = simulate(cfg, plan, M, stream_seed(cfg.base_seed,
                                                                     static_cast<std::uint64_t>(M),
                                                                     static_cast<std::uint64_t>(rep)));
    const BatchSizes b = plan.batch.at(M);

    auto wants = [&](EstimatorId id) {
        return std::find(cfg.estimators.begin(), cfg.estimators.end(), id) != cfg.estimators.end();
    };
    const bool full = wants(EstimatorId::empirical) || wants(EstimatorId::momentls_emp)
                      || wants(EstimatorId::init_pos) || wants(EstimatorId::init_mono)
                      || wants(EstimatorId::init_conv);
    const bool windowed = wants(EstimatorId::bartlett) || wants(EstimatorId::momentls_bartlett);

    std::optional<LagSequence> r_full, r_bart;
    if (full) r_full = empirical_autocov(x);
    if (windowed) {
        const LagSequence base = r_full ? *r_full : empirical_autocov(x, EmpiricalMean{}, b.bartlett());
        r_bart = apply_window(base, WindowSpec::bartlett(b.bartlett()));
    }

    ProjectionConfig pcfg;
    pcfg.delta = plan.delta;

    std::vector<MetricsRow> rows;
    for (EstimatorId id : cfg.estimators) {
        MetricsRow row;
        row.estimator = id;
        row.M = M;
        row.replication = rep;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            switch (id) {
            case EstimatorId::empirical:
                row.sigma2_hat = r_full->two_sided_sum();
                row.seq_sq_err = sq_distance(*r_full, plan.F);
                break;
            case EstimatorId::bartlett:
                row.sigma2_hat = r_bart->two_sided_sum();
                row.seq_sq_err = sq_distance(*r_bart, plan.F);
                break;
            case EstimatorId::momentls_emp:
            case EstimatorId::momentls_bartlett: {
                const LagSequence& r = id == EstimatorId::momentls_emp ? *r_full : *r_bart;
                const ProjectionResult p = project(r, pcfg);
                row.sigma2_hat = p.sigma2;
                row.seq_sq_err = sq_distance(p.measure, plan.F);
                row.atoms = static_cast<int>(p.measure.size());
                row.iterations = p.iterations;
                row.mass = p.measure.total_mass();
                row.mean_location = p.measure.mean_location();
                break;
            }
            case EstimatorId::bm:
                row.sigma2_hat = batch_means(x, b.bm);
                break;
            case EstimatorId::obm:
                row.sigma2_hat = overlapping_batch_means(x, b.obm);
                break;
            case EstimatorId::init_pos:
                row.sigma2_hat = initial_sequence(*r_full, InitSeqType::positive).sigma2;
                break;
            case EstimatorId::init_mono:
                row.sigma2_hat = initial_sequence(*r_full, InitSeqType::monotone).sigma2;
                break;
            case EstimatorId::init_conv:
                row.sigma2_hat = initial_sequence(*r_full, InitSeqType::convex).sigma2;
                break;
            }
            const double e = row.sigma2_hat - plan.sigma2;
            row.avar_sq_err = e * e;
        } catch (const std::exception& ex) {
            row.error = ex.what();
            row.seq_sq_err.reset();
            row.sigma2_hat = row.avar_sq_err = std::numeric_limits<double>::quiet_NaN();
        }
        row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }
std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string{}; }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

std::string_view to_string(EstimatorId id)
{
    for (const auto& [k, name] : kNames)
        if (k == id) return name;
    return "?";
}

std::optional<EstimatorId> parse_estimator(std::string_view name)
{
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

bool is_sequence_estimator(EstimatorId id)
{
    return id == EstimatorId::empirical || id == EstimatorId::bartlett
           || id == EstimatorId::momentls_emp || id == EstimatorId::momentls_bartlett;
}

void ExperimentConfig::validate() const
{
    if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
    if (chain_lengths.empty()) throw std::invalid_argument("config: chain_lengths is empty");
    for (Index M : chain_lengths)
        if (M < 4) throw std::invalid_argument("config: chain lengths must be >= 4");
    if (estimators.empty()) throw std::invalid_argument("config: no estimators selected");
    if (delta && !(*delta > 0.0 && *delta <= 1.0))
        throw std::invalid_argument("config: delta must lie in (0, 1]");
    if (batch && *batch < 1) throw std::invalid_argument("config: batch must be >= 1");
    if (const auto* ar = std::get_if<Ar1Setting>(&setting)) {
        if (!(std::abs(ar->rho) < 1.0)) throw std::invalid_argument("config: |rho| must be < 1");
        if (!(ar->tau > 0.0)) throw std::invalid_argument("config: tau must be > 0");
    } else if (std::get<DiscreteMhSetting>(setting).d < 2) {
        throw std::invalid_argument("config: d must be >= 2");
    }
}

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig cfg;
    Ar1Setting ar;
    DiscreteMhSetting mh;
    std::string setting = "ar1";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "setting") {
            if (value != "ar1" && value != "discrete-mh")
                throw std::invalid_argument(where + ": setting must be ar1 or discrete-mh");
            setting = value;
        } else if (key == "rho") {
            ar.rho = parse_real(value, where);
        } else if (key == "tau") {
            ar.tau = parse_real(value, where);
        } else if (key == "d") {
            mh.d = parse_int(value, where);
        } else if (key == "model_seed") {
            mh.model_seed = parse_u64(value, where);
        } else if (key == "chain_lengths") {
            cfg.chain_lengths.clear();
            for (const auto& v : split_list(value)) cfg.chain_lengths.push_back(parse_int(v, where));
        } else if (key == "replications") {
            cfg.replications = static_cast<int>(parse_int(value, where));
        } else if (key == "estimators") {
            cfg.estimators.clear();
            for (const auto& v : split_list(value)) {
                const auto id = parse_estimator(v);
                if (!id) throw std::invalid_argument(where + ": unknown estimator '" + v + "'");
                cfg.estimators.push_back(*id);
            }
        } else if (key == "delta") {
            if (value == "oracle") cfg.delta.reset();
            else cfg.delta = parse_real(value, where);
        } else if (key == "batch") {
            if (value == "oracle") cfg.batch.reset();
            else cfg.batch = parse_int(value, where);
        } else if (key == "base_seed") {
            cfg.base_seed = parse_u64(value, where);
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    if (setting == "ar1") cfg.setting = ar;
    else cfg.setting = mh;
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_config(in);
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg, unsigned threads)
{
    cfg.validate();
    const Plan plan = make_plan(cfg);

    struct Task
    {
        Index M;
        int rep;
    };
    std::vector<Task> tasks;
    for (Index M : cfg.chain_lengths)
        for (int rep = 0; rep < cfg.replications; ++rep) tasks.push_back({M, rep});

    std::vector<std::vector<MetricsRow>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
            results[i] = run_replication(cfg, plan, tasks[i].M, tasks[i].rep);
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::vector<MetricsRow> rows;
    for (auto& r : results)
        for (auto& row : r) rows.push_back(std::move(row));
    return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<MetricsRow>& rows)
{
    if (rows.empty()) throw std::invalid_argument("aggregate: no rows");
    // group order: estimator enum order, then M ascending
    std::map<std::pair<int, Index>, std::vector<const MetricsRow*>> groups;
    for (const auto& r : rows) groups[{static_cast<int>(r.estimator), r.M}].push_back(&r);

    auto mean_se = [](const std::vector<double>& v) {
        const double n = static_cast<double>(v.size());
        double m = 0.0;
        for (double x : v) m += x;
        m /= n;
        if (v.size() < 2) return std::pair{m, 0.0};
        double ss = 0.0;
        for (double x : v) ss += (x - m) * (x - m);
        return std::pair{m, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
    };

    std::vector<SummaryRow> out;
    for (const auto& [key, members] : groups) {
        SummaryRow s;
        s.estimator = static_cast<EstimatorId>(key.first);
        s.M = key.second;
        std::vector<double> seq, avar, sig;
        for (const auto* r : members) {
            if (!r->error.empty()) {
                ++s.failures;
                continue;
            }
            if (r->seq_sq_err) seq.push_back(*r->seq_sq_err);
            avar.push_back(r->avar_sq_err);
            sig.push_back(r->sigma2_hat);
        }
        s.n = static_cast<int>(avar.size());
        s.se_defined = s.n >= 2;
        if (!avar.empty()) {
            std::tie(s.mean_avar_sq_err, s.se_avar_sq_err) = mean_se(avar);
            s.mean_sigma2_hat = mean_se(sig).first;
        }
        if (!seq.empty()) {
            const auto [m, se] = mean_se(seq);
            s.mean_seq_sq_err = m;
            s.se_seq_sq_err = se;
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_rows_csv(std::ostream& out, const std::vector<MetricsRow>& rows, bool include_runtime)
{
    out << "estimator,M,replication,seq_sq_err,avar_sq_err,sigma2_hat,atoms,iterations,mass,"
           "mean_location";
    if (include_runtime) out << ",runtime_s";
    out << ",error\n";
    for (const auto& r : rows) {
        out << to_string(r.estimator) << ',' << r.M << ',' << r.replication << ','
            << opt(r.seq_sq_err) << ',' << format_double(r.avar_sq_err) << ','
            << format_double(r.sigma2_hat) << ',' << opt(r.atoms) << ',' << opt(r.iterations)
            << ',' << opt(r.mass) << ',' << opt(r.mean_location);
        if (include_runtime) out << ',' << format_double(r.runtime);
        out << ',' << csv_escape(r.error) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary)
{
    out << "estimator,M,n,failures,mean_seq_sq_err,se_seq_sq_err,mse_sigma2,se_mse_sigma2,"
           "rmse_sigma2,mean_sigma2_hat,se_defined\n";
    for (const auto& s : summary) {
        out << to_string(s.estimator) << ',' << s.M << ',' << s.n << ',' << s.failures << ','
            << opt(s.mean_seq_sq_err) << ',' << opt(s.se_seq_sq_err) << ','
            << format_double(s.mean_avar_sq_err) << ',' << format_double(s.se_avar_sq_err) << ','
            << format_double(std::sqrt(s.mean_avar_sq_err)) << ','
            << format_double(s.mean_sigma2_hat) << ',' << (s.se_defined ? 1 : 0) << '\n';
    }
}

} // namespace momentls
