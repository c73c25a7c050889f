#ifndef MOMENTLS_CHAINS_HPP
#define MOMENTLS_CHAINS_HPP

#include "momentls/seqcore.hpp"

#include <cstdint>
#include <vector>

namespace momentls
{

/// Stationary AR(1): X_{t+1} = rho X_t + eps, eps ~ N(0, tau^2), X_0 ~ N(0, tau^2 / (1 - rho^2)).
struct Ar1Spec
{
    double rho = 0.0;
    double tau = 1.0;
    Index length = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

std::vector<double> simulate_ar1(const Ar1Spec& spec);

/**
 * Finite-state reversible chain: stationary law pi, proposal P, Metropolis-
 * Hastings kernel Q, and the observed function g.
 */
struct DiscreteChainModel
{
    Eigen::VectorXd pi;
    Eigen::MatrixXd P;
    Eigen::MatrixXd Q;
    Eigen::VectorXd g;

    Index states() const { return pi.size(); }

    /// Throws std::invalid_argument naming the first broken invariant.
    void validate(double tol = 1e-12) const;
    /// max_ij |pi_i Q_ij - pi_j Q_ji|
    double detailed_balance_error() const;
};

/// Metropolis-Hastings kernel targeting pi with proposal P.
DiscreteChainModel make_mh_model(Eigen::VectorXd pi, Eigen::MatrixXd P, Eigen::VectorXd g);

/**
 * Random model: pi = U / sum U, P(i, .) = V_i / sum V_i with U, V iid
 * Uniform(0, 1), and g iid N(0, 1).  Draw order: U, then V row-major, then g.
 */
DiscreteChainModel build_random_mh(Index d, std::uint64_t seed);

/// State path X_0..X_{M-1}, X_0 ~ pi, transitions by inverse-CDF on rows of Q.
std::vector<int> simulate_discrete(const DiscreteChainModel& model, Index length,
                                   std::uint64_t seed);

/// g(X_t) for a state path.
std::vector<double> observe(const DiscreteChainModel& model, const std::vector<int>& path);

} // namespace momentls

#endif // MOMENTLS_CHAINS_HPP
