#ifndef MOMENTLS_ORACLE_HPP
#define MOMENTLS_ORACLE_HPP

/** @file
 * Exact autocovariance, representing measure and tuning constants for the two
 * simulation settings (stationary AR(1) and a finite-state reversible chain).
 */

#include "momentls/chains.hpp"
#include "momentls/seqcore.hpp"

namespace momentls
{

struct BatchSizes
{
    Index bm = 1;
    Index obm = 1;
    Index bartlett() const { return obm; }
};

struct TruthBundle
{
    LagSequence gamma;     ///< exact autocovariance, lags 0..L-1
    DiscreteMeasure F;     ///< representing measure of gamma
    double sigma2 = 0.0;   ///< asymptotic variance
    double delta0 = 1.0;   ///< 1 - max |location| of F (1 for empty F)
    double gamma_bs = 0.0; ///< -2 sum_{s>=1} s gamma(s), the batch-size constant
    BatchSizes batch;      ///< MSE-optimal batch sizes at chain length M
};

/**
 * Truth for a reversible finite-state chain.  Eigenpairs come from the
 * symmetrized kernel D^{1/2} Q D^{-1/2}; the eigenvector aligned with sqrt(pi)
 * is the unit eigenvalue and is excluded.  Atoms with weight below 1e-14 are
 * dropped.  Throws std::domain_error if another eigenvalue has modulus >= 1.
 */
TruthBundle discrete_truth(const DiscreteChainModel& model, Index lags, Index chain_length);

/// Truth for the stationary AR(1) with g(x) = x.
TruthBundle ar1_truth(double rho, double tau, Index lags, Index chain_length);

/// 1 - max_i |a_i|.  Throws std::invalid_argument on an empty measure.
double oracle_delta(const DiscreteMeasure& F);

/// -2 sum_{s>=1} s m(s) = -2 sum_i w_i a_i / (1 - a_i)^2.
double batch_size_constant(const DiscreteMeasure& F);

/**
 * b_BM = (G^2 M / sigma2)^(1/3) and b_OBM = (8 G^2 M / (3 sigma2))^(1/3),
 * rounded to nearest and clamped to [1, M - 1].
 */
BatchSizes optimal_batch_sizes(double sigma2, double gamma_bs, Index chain_length);

/// Stationary lag-k autocovariance <gbar, Q^k gbar>_pi by repeated matrix-vector products.
Eigen::VectorXd matrix_power_autocov(const DiscreteChainModel& model, Index lags);

} // namespace momentls

#endif // MOMENTLS_ORACLE_HPP
