#ifndef MOMENTLS_RIVALS_HPP
#define MOMENTLS_RIVALS_HPP

// Competing asymptotic-variance estimators: batch means, overlapping batch
// means, the Bartlett spectral estimator, and the initial sequence family.

#include "momentls/seqcore.hpp"

#include <span>
#include <string_view>

namespace momentls
{

enum class InitSeqType { positive, monotone, convex };

std::string_view to_string(InitSeqType t);

/// Non-overlapping batch means with batch size b; the partial tail batch is discarded.
double batch_means(std::span<const double> samples, Index b);

/// Overlapping batch means over all M - b + 1 windows.
double overlapping_batch_means(std::span<const double> samples, Index b);

/// r(0) + 2 sum_k w(k) r(k) with the modified Bartlett window of threshold b.
double spectral_bartlett(std::span<const double> samples, Index b);

/// Windowed two-sided sum for an autocovariance estimate already in hand.
double spectral_bartlett(const LagSequence& r, Index b);

/// Lower convex hull of (k, y_k) evaluated at k = 0..T-1.
Eigen::VectorXd greatest_convex_minorant(const Eigen::VectorXd& y);

struct InitialSequence
{
    Eigen::VectorXd gamma;  ///< shape-corrected Gamma(0..T-1)
    Index truncation = 0;   ///< T
    double sigma2 = 0.0;    ///< -r(0) + 2 sum_{k<T} gamma(k)
};

/**
 * Initial sequence estimator from an autocovariance estimate.
 *
 * Gamma(k) = r(2k) + r(2k+1) is truncated before its first negative entry
 * (or kept whole if none).  `monotone` replaces each entry by the running
 * minimum; `convex` takes the greatest convex minorant of the monotone
 * sequence, so convex <= monotone <= positive entrywise.  Throws
 * std::domain_error if Gamma(0) < 0.
 */
InitialSequence initial_sequence(const LagSequence& r, InitSeqType type);

/// As above, from raw chain output (empirical-mean autocovariance).
double initial_seq(std::span<const double> samples, InitSeqType type);

} // namespace momentls

#endif // MOMENTLS_RIVALS_HPP
