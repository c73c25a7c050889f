#include "momentls/chains.hpp"

#include "momentls/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace momentls
{

void Ar1Spec::validate() const
{
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("Ar1Spec: |rho| must be < 1");
    if (!(tau > 0.0)) throw std::invalid_argument("Ar1Spec: tau must be > 0");
    if (length < 2) throw std::invalid_argument("Ar1Spec: chain length must be >= 2");
}

std::vector<double> simulate_ar1(const Ar1Spec& spec)
{
    spec.validate();
    Rng rng(spec.seed);
    std::vector<double> x(static_cast<std::size_t>(spec.length));
    x[0] = rng.normal() * spec.tau / std::sqrt(1.0 - spec.rho * spec.rho);
    for (std::size_t t = 1; t < x.size(); ++t) x[t] = spec.rho * x[t - 1] + spec.tau * rng.normal();
    return x;
}

double DiscreteChainModel::detailed_balance_error() const
{
    double worst = 0.0;
    const Index d = states();
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            worst = std::max(worst, std::abs(pi[i] * Q(i, j) - pi[j] * Q(j, i)));
    return worst;
}

void DiscreteChainModel::validate(double tol) const
{
    const Index d = states();
    if (d < 2) throw std::invalid_argument("DiscreteChainModel: need at least 2 states");
    if (P.rows() != d || P.cols() != d || Q.rows() != d || Q.cols() != d || g.size() != d)
        throw std::invalid_argument("DiscreteChainModel: dimension mismatch");
    if ((pi.array() <= 0.0).any())
        throw std::invalid_argument("DiscreteChainModel: pi entries must be positive");
    if (std::abs(pi.sum() - 1.0) > tol)
        throw std::invalid_argument("DiscreteChainModel: pi does not sum to 1");
    for (const auto* m : {&P, &Q}) {
        const char* name = m == &P ? "P" : "Q";
        if ((m->array() < 0.0).any())
            throw std::invalid_argument(std::string("DiscreteChainModel: negative entry in ") + name);
        for (Index i = 0; i < d; ++i)
            if (std::abs(m->row(i).sum() - 1.0) > tol)
                throw std::invalid_argument(std::string("DiscreteChainModel: row ")
                                            + std::to_string(i) + " of " + name
                                            + " does not sum to 1");
    }
    if (detailed_balance_error() > tol)
        throw std::invalid_argument("DiscreteChainModel: detailed balance violated");
}

DiscreteChainModel make_mh_model(Eigen::VectorXd pi, Eigen::MatrixXd P, Eigen::VectorXd g)
{
    const Index d = pi.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        double off = 0.0;
        for (Index j = 0; j < d; ++j) {
            if (j == i) continue;
            // pi_i Q_ij = min(pi_i P_ij, pi_j P_ji), symmetric in (i, j)
            Q(i, j) = std::min(pi[i] * P(i, j), pi[j] * P(j, i)) / pi[i];
            off += Q(i, j);
        }
        Q(i, i) = 1.0 - off;
    }
    DiscreteChainModel model{std::move(pi), std::move(P), std::move(Q), std::move(g)};
    model.validate();
    return model;
}

DiscreteChainModel build_random_mh(Index d, std::uint64_t seed)
{
    if (d < 2) throw std::invalid_argument("build_random_mh: need d >= 2");
    Rng rng(seed);
    Eigen::VectorXd pi(d);
    for (Index i = 0; i < d; ++i) pi[i] = rng.uniform_open();
    pi /= pi.sum();
    Eigen::MatrixXd P(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) P(i, j) = rng.uniform_open();
        P.row(i) /= P.row(i).sum();
    }
    Eigen::VectorXd g(d);
    for (Index i = 0; i < d; ++i) g[i] = rng.normal();
    return make_mh_model(std::move(pi), std::move(P), std::move(g));
}

namespace
{

int draw(const double* cdf, Index d, double u)
{
    const double* it = std::upper_bound(cdf, cdf + d, u);
    return static_cast<int>(std::min<Index>(it - cdf, d - 1));
}

} // namespace

std::vector<int> simulate_discrete(const DiscreteChainModel& model, Index length,
                                   std::uint64_t seed)
{
    if (length < 1) throw std::invalid_argument("simulate_discrete: length must be >= 1");
    const Index d = model.states();
    // row-major cumulative sums: rows of Q, then pi
    std::vector<double> cdf(static_cast<std::size_t>((d + 1) * d));
    for (Index i = 0; i < d; ++i) {
        double s = 0.0;
        for (Index j = 0; j < d; ++j) cdf[i * d + j] = (s += model.Q(i, j));
    }
    double s = 0.0;
    for (Index j = 0; j < d; ++j) cdf[d * d + j] = (s += model.pi[j]);

    Rng rng(seed);
    std::vector<int> path(static_cast<std::size_t>(length));
    path[0] = draw(&cdf[d * d], d, rng.uniform());
    for (std::size_t t = 1; t < path.size(); ++t)
        path[t] = draw(&cdf[path[t - 1] * d], d, rng.uniform());
    return path;
}

std::vector<double> observe(const DiscreteChainModel& model, const std::vector<int>& path)
{
    std::vector<double> out(path.size());
    for (std::size_t t = 0; t < path.size(); ++t) {
        if (path[t] < 0 || path[t] >= model.states())
            throw std::out_of_range("observe: state " + std::to_string(path[t]) + " out of range");
        out[t] = model.g[path[t]];
    }
    return out;
}

} // namespace momentls
