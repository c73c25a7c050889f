#ifndef MOMENTLS_AUTOCOV_HPP
#define MOMENTLS_AUTOCOV_HPP

#include "momentls/seqcore.hpp"

#include <span>
#include <string>
#include <variant>

namespace momentls
{

/// Center with the sample mean Y_M.
struct EmpiricalMean
{};

/// Center with a known stationary mean.
struct KnownMean
{
    double mu = 0.0;
};

using CenteringMode = std::variant<EmpiricalMean, KnownMean>;

/**
 * Lag window w(k) applied to an autocovariance estimate.
 *
 *   none        w(k) = 1
 *   truncation  w(k) = 1{k < b}
 *   parzen      w(k) = (1 - k^q / b^q) 1{k < b}   (q = 1 is modified Bartlett)
 */
struct WindowSpec
{
    enum class Kind { none, truncation, parzen };

    Kind kind = Kind::none;
    Index threshold = 1;
    int q = 1;

    static WindowSpec none() { return {}; }
    static WindowSpec truncation(Index b) { return {Kind::truncation, b, 1}; }
    static WindowSpec parzen(Index b, int q) { return {Kind::parzen, b, q}; }
    static WindowSpec bartlett(Index b) { return parzen(b, 1); }

    double weight(Index k) const;
    void validate() const;
};

/**
 * Autocovariance estimate with divisor M at every lag:
 * r(k) = M^-1 sum_{t=0}^{M-1-k} (x_t - c)(x_{t+k} - c).
 *
 * Returns lags 0..max_lag-1; max_lag <= 0 means all M lags.  Requires M >= 2
 * and finite samples.  With empirical centering the two-sided sum of the full
 * result is zero.
 */
LagSequence empirical_autocov(std::span<const double> samples,
                              CenteringMode mode = EmpiricalMean{}, Index max_lag = 0);

/// r(k) w(k), truncated to the window's support.
LagSequence apply_window(const LagSequence& r, const WindowSpec& w);

/// Gamma(k) = r(2k) + r(2k+1), k = 0..ceil(L/2)-1, missing lags read as 0.
Eigen::VectorXd gamma_pairs(const LagSequence& r);

/// Result of checking an initial estimate for eligibility as projection input.
struct InitialConditionsReport
{
    bool peak_at_zero = true;   ///< r(0) >= |r(k)| for all k
    Index first_violation = -1;
    bool finite_support = true; ///< structural for LagSequence
    bool symmetric = true;      ///< structural for LagSequence
    std::string note;

    bool ok() const { return peak_at_zero && finite_support && symmetric; }
};

InitialConditionsReport validate_initial_conditions(const LagSequence& r);

} // namespace momentls

#endif // MOMENTLS_AUTOCOV_HPP
