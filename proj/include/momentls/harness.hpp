#ifndef MOMENTLS_HARNESS_HPP
#define MOMENTLS_HARNESS_HPP

/** @file
 * Replicated simulation experiments comparing autocovariance-sequence and
 * asymptotic-variance estimators against exact truth.
 *
 * Config file: one `key = value` per line, '#' comments.  Keys:
 *
 *   setting        ar1 | discrete-mh
 *   rho, tau       AR(1) parameters
 *   d, model_seed  discrete chain size and model seed
 *   chain_lengths  comma list of M, each >= 4
 *   replications   B >= 1
 *   estimators     comma list from: empirical bartlett momentls-emp
 *                  momentls-bartlett bm obm init-pos init-mono init-conv
 *   delta          oracle | <value in (0, 1]>
 *   batch          oracle | <positive integer>
 *   base_seed      unsigned 64-bit
 *
 * Unknown keys are errors.
 */

#include "momentls/seqcore.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace momentls
{

enum class EstimatorId {
    empirical,
    bartlett,
    momentls_emp,
    momentls_bartlett,
    bm,
    obm,
    init_pos,
    init_mono,
    init_conv,
};

std::string_view to_string(EstimatorId id);
std::optional<EstimatorId> parse_estimator(std::string_view name);
/// Estimators that produce a whole autocovariance sequence.
bool is_sequence_estimator(EstimatorId id);

struct Ar1Setting
{
    double rho = 0.9;
    double tau = 1.0;
};

struct DiscreteMhSetting
{
    Index d = 100;
    std::uint64_t model_seed = 1;
};

struct ExperimentConfig
{
    std::variant<Ar1Setting, DiscreteMhSetting> setting = Ar1Setting{};
    std::vector<Index> chain_lengths{4000, 16000, 64000};
    int replications = 50;
    std::vector<EstimatorId> estimators{
        EstimatorId::empirical,    EstimatorId::bartlett, EstimatorId::momentls_emp,
        EstimatorId::momentls_bartlett, EstimatorId::bm,  EstimatorId::obm,
        EstimatorId::init_conv};
    std::optional<double> delta;   ///< unset: oracle rule
    std::optional<Index> batch;    ///< unset: oracle batch sizes
    std::uint64_t base_seed = 20240101;

    void validate() const;
};

/// Throws std::invalid_argument naming the offending line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct MetricsRow
{
    EstimatorId estimator{};
    Index M = 0;
    int replication = 0;
    std::optional<double> seq_sq_err;
    double avar_sq_err = 0.0;
    double sigma2_hat = 0.0;
    double runtime = 0.0;  ///< seconds
    std::optional<int> atoms;
    std::optional<int> iterations;
    std::optional<double> mass;           ///< total mass of the fitted measure
    std::optional<double> mean_location;  ///< weight-averaged atom location
    std::string error;                    ///< empty on success
};

/**
 * Runs every (M, replication) pair on `threads` workers (0 = hardware
 * concurrency).  Chain seeds are stream_seed(base_seed, M, replication).
 * Rows come back sorted by (M, replication, estimator order in cfg), so the
 * output does not depend on the thread count.
 */
std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

struct SummaryRow
{
    EstimatorId estimator{};
    Index M = 0;
    int n = 0;          ///< successful rows
    int failures = 0;
    std::optional<double> mean_seq_sq_err;
    std::optional<double> se_seq_sq_err;
    double mean_avar_sq_err = 0.0;  ///< mean squared error of sigma2_hat
    double se_avar_sq_err = 0.0;
    double mean_sigma2_hat = 0.0;
    bool se_defined = false;        ///< false when n < 2 (SE reported as 0)
};

/// Means and standard errors (sd / sqrt(n)) per estimator and M.
std::vector<SummaryRow> aggregate(const std::vector<MetricsRow>& rows);

/// Comma-separated rows with a fixed header; runtime column only if requested.
void write_rows_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                    bool include_runtime = false);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

} // namespace momentls

#endif // MOMENTLS_HARNESS_HPP
