#include "momentls/harness.hpp"

#include "momentls/autocov.hpp"
#include "momentls/chains.hpp"
#include "momentls/oracle.hpp"
#include "momentls/rivals.hpp"
#include "momentls/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace momentls;

namespace
{

ExperimentConfig small_ar1(std::vector<EstimatorId> est, int B = 2)
{
    ExperimentConfig cfg;
    cfg.setting = Ar1Setting{0.9, 1.0};
    cfg.chain_lengths = {4000};
    cfg.replications = B;
    cfg.estimators = std::move(est);
    return cfg;
}

std::string csv(const std::vector<MetricsRow>& rows, bool runtime = false)
{
    std::ostringstream out;
    write_rows_csv(out, rows, runtime);
    return out.str();
}

MetricsRow row_with(double avar, std::optional<double> seq = std::nullopt)
{
    MetricsRow r;
    r.estimator = EstimatorId::bm;
    r.M = 100;
    r.avar_sq_err = avar;
    r.seq_sq_err = seq;
    return r;
}

} // namespace

TEST_CASE("run_experiment is deterministic and thread-count independent")
{
    const auto cfg = small_ar1({EstimatorId::momentls_emp});
    const auto a = run_experiment(cfg, 1);
    REQUIRE(a.size() == 2);
    CHECK(a[0].replication == 0);
    CHECK(a[1].replication == 1);
    CHECK(a[0].error.empty());
    CHECK(a[0].atoms.value() >= 1);
    CHECK(csv(a) == csv(run_experiment(cfg, 1)));
    CHECK(csv(a) == csv(run_experiment(cfg, 3)));
}

TEST_CASE("replications see the documented chain")
{
    auto cfg = small_ar1({EstimatorId::bm, EstimatorId::obm});
    cfg.batch = 40;
    const auto rows = run_experiment(cfg, 1);
    const auto x = simulate_ar1({0.9, 1.0, 4000, stream_seed(cfg.base_seed, 4000, 1)});
    CHECK(rows[2].sigma2_hat == batch_means(x, 40));
    CHECK(rows[3].sigma2_hat == overlapping_batch_means(x, 40));

    // adding estimators does not perturb the chains
    cfg.estimators = {EstimatorId::obm};
    CHECK(run_experiment(cfg, 1)[1].sigma2_hat == rows[3].sigma2_hat);
}

TEST_CASE("empirical estimator: zero sigma2 and its own tail as an error floor")
{
    const auto rows = run_experiment(small_ar1({EstimatorId::empirical}, 3), 1);
    const TruthBundle t = ar1_truth(0.9, 1.0, 1, 4000);
    for (const auto& r : rows) {
        REQUIRE(r.error.empty());
        CHECK(std::abs(r.sigma2_hat) <= 1e-9);
        CHECK(r.avar_sq_err == doctest::Approx(100.0 * 100.0).epsilon(1e-9));
        CHECK(r.seq_sq_err.value() >= tail_sq_norm(t.F, r.M));
    }
}

TEST_CASE("every estimator runs on a discrete MH setting")
{
    ExperimentConfig cfg;
    cfg.setting = DiscreteMhSetting{20, 3};
    cfg.chain_lengths = {2000};
    cfg.replications = 1;
    cfg.estimators = {EstimatorId::empirical, EstimatorId::bartlett, EstimatorId::momentls_emp,
                      EstimatorId::momentls_bartlett, EstimatorId::bm, EstimatorId::obm,
                      EstimatorId::init_pos, EstimatorId::init_mono, EstimatorId::init_conv};
    const auto rows = run_experiment(cfg, 1);
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) {
        CHECK_MESSAGE(r.error.empty(), r.error);
        CHECK(r.avar_sq_err >= 0.0);
        CHECK(r.seq_sq_err.has_value() == is_sequence_estimator(r.estimator));
        if (r.seq_sq_err) CHECK(*r.seq_sq_err >= 0.0);
    }
    CHECK(rows[8].sigma2_hat <= rows[7].sigma2_hat);
    CHECK(rows[7].sigma2_hat <= rows[6].sigma2_hat);
}

TEST_CASE("per-row failures are recorded, not fatal")
{
    auto cfg = small_ar1({EstimatorId::bm, EstimatorId::obm}, 1);
    cfg.batch = 3000;  // a single batch: batch means is undefined
    const auto rows = run_experiment(cfg, 1);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].error.empty());
    CHECK(std::isnan(rows[0].sigma2_hat));
    CHECK(rows[1].error.empty());

    const auto summary = aggregate(rows);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].failures == 1);
    CHECK(summary[0].n == 0);
}

TEST_CASE("aggregate")
{
    const auto one = aggregate({row_with(4.0, 2.0)});
    REQUIRE(one.size() == 1);
    CHECK(one[0].mean_avar_sq_err == 4.0);
    CHECK(one[0].se_avar_sq_err == 0.0);
    CHECK_FALSE(one[0].se_defined);
    CHECK(one[0].mean_seq_sq_err.value() == 2.0);

    const auto two = aggregate({row_with(5.0), row_with(5.0)});
    CHECK(two[0].se_avar_sq_err == 0.0);
    CHECK(two[0].se_defined);
    CHECK_FALSE(two[0].mean_seq_sq_err.has_value());

    const auto three = aggregate({row_with(1.0), row_with(2.0), row_with(3.0)});
    CHECK(three[0].mean_avar_sq_err == doctest::Approx(2.0));
    CHECK(three[0].se_avar_sq_err == doctest::Approx(1.0 / std::sqrt(3.0)));

    // groups ordered by estimator, then M
    MetricsRow a = row_with(1.0), b = row_with(1.0), c = row_with(1.0);
    a.M = 200;
    c.estimator = EstimatorId::empirical;
    const auto g = aggregate({a, b, c});
    REQUIRE(g.size() == 3);
    CHECK(g[0].estimator == EstimatorId::empirical);
    CHECK(g[1].M == 100);
    CHECK(g[2].M == 200);

    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("parse_config")
{
    std::istringstream in(R"(# comment
setting = discrete-mh
d = 30
model_seed = 4
chain_lengths = 1000, 2000
replications = 7
estimators = momentls-emp, bm   # trailing comment
delta = 0.2
batch = oracle
base_seed = 99
)");
    const ExperimentConfig cfg = parse_config(in);
    const auto& mh = std::get<DiscreteMhSetting>(cfg.setting);
    CHECK(mh.d == 30);
    CHECK(mh.model_seed == 4);
    CHECK(cfg.chain_lengths == std::vector<Index>{1000, 2000});
    CHECK(cfg.replications == 7);
    CHECK(cfg.estimators == std::vector<EstimatorId>{EstimatorId::momentls_emp, EstimatorId::bm});
    CHECK(cfg.delta.value() == 0.2);
    CHECK_FALSE(cfg.batch.has_value());
    CHECK(cfg.base_seed == 99);

    for (const char* bad : {"colour = red\n", "estimators = magic\n", "rho = abc\n",
                            "chain_lengths = 3\n", "replications = 0\n", "delta = 1.5\n",
                            "rho = 1\n", "no equals sign\n", "setting = garch\n",
                            "base_seed = -1\n"}) {
        std::istringstream s(bad);
        CHECK_THROWS_AS(parse_config(s), std::invalid_argument);
    }
}

TEST_CASE("csv output")
{
    auto r = row_with(1.5, 0.25);
    r.sigma2_hat = 0.1;
    r.atoms = 3;
    r.runtime = 0.5;
    r.error = "bad, very";
    const std::string plain = csv({r});
    CHECK(plain
          == "estimator,M,replication,seq_sq_err,avar_sq_err,sigma2_hat,atoms,iterations,mass,"
             "mean_location,error\n"
             "bm,100,0,0.25,1.5,0.10000000000000001,3,,,,\"bad, very\"\n");
    const std::string timed = csv({r}, true);
    CHECK(timed.find(",runtime_s,error\n") != std::string::npos);
    CHECK(timed.find(",0.5,") != std::string::npos);

    std::ostringstream s;
    write_summary_csv(s, aggregate({row_with(1.0), row_with(3.0)}));
    CHECK(s.str().rfind("estimator,M,n,failures,", 0) == 0);
}
