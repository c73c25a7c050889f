#include "momentls/oracle.hpp"

#include "momentls/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace momentls
{

namespace
{

TruthBundle assemble(DiscreteMeasure F, Index lags, Index chain_length)
{
    TruthBundle t;
    t.gamma = materialize(F, std::max<Index>(lags, 1));
    t.sigma2 = sigma2_of_measure(F);
    t.delta0 = F.empty() ? 1.0 : 1.0 - F.max_abs_location();
    t.gamma_bs = batch_size_constant(F);
    if (t.sigma2 > 0.0 && chain_length >= 2)
        t.batch = optimal_batch_sizes(t.sigma2, t.gamma_bs, chain_length);
    t.F = std::move(F);
    return t;
}

} // namespace

TruthBundle discrete_truth(const DiscreteChainModel& model, Index lags, Index chain_length)
{
    model.validate();
    const Index d = model.states();
    const Eigen::VectorXd sq = model.pi.array().sqrt();
    const Eigen::VectorXd inv_sq = sq.cwiseInverse();
    Eigen::MatrixXd S = sq.asDiagonal() * model.Q * inv_sq.asDiagonal();
    S = 0.5 * (S + S.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("discrete_truth: eigendecomposition failed");
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const Eigen::MatrixXd& U = es.eigenvectors();

    Index unit = 0;
    (U.transpose() * sq).cwiseAbs().maxCoeff(&unit);

    // <g, phi_i>_pi = sum_k pi_k g_k phi_i(k) with phi_i = D^{-1/2} u_i
    const double mean = model.pi.dot(model.g);
    const Eigen::VectorXd centered = model.g.array() - mean;
    const Eigen::VectorXd coef = U.transpose() * (sq.array() * centered.array()).matrix();

    std::vector<GeometricAtom> atoms;
    for (Index i = 0; i < d; ++i) {
        if (i == unit) continue;
        if (!(std::abs(lambda[i]) < 1.0))
            throw std::domain_error("discrete_truth: eigenvalue of modulus >= 1, chain is not ergodic");
        const double w = coef[i] * coef[i];
        if (w >= 1e-14) atoms.push_back({lambda[i], w});
    }
    return assemble(DiscreteMeasure(std::move(atoms)), lags, chain_length);
}

TruthBundle ar1_truth(double rho, double tau, Index lags, Index chain_length)
{
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("ar1_truth: |rho| must be < 1");
    if (!(tau > 0.0)) throw std::invalid_argument("ar1_truth: tau must be > 0");
    return assemble(DiscreteMeasure{{rho, tau * tau / (1.0 - rho * rho)}}, lags, chain_length);
}

double oracle_delta(const DiscreteMeasure& F)
{
    if (F.empty()) throw std::invalid_argument("oracle_delta: empty measure, delta undefined");
    if (!(F.max_abs_location() < 1.0))
        throw std::invalid_argument("oracle_delta: atom at |location| = 1");
    return 1.0 - F.max_abs_location();
}

double batch_size_constant(const DiscreteMeasure& F)
{
    double s = 0.0;
    for (const auto& a : F.atoms()) {
        const double q = 1.0 - a.location;
        s += a.weight * a.location / (q * q);
    }
    return -2.0 * s;
}

BatchSizes optimal_batch_sizes(double sigma2, double gamma_bs, Index chain_length)
{
    if (!(sigma2 > 0.0)) throw std::invalid_argument("optimal_batch_sizes: sigma2 must be > 0");
    if (chain_length < 1) throw std::invalid_argument("optimal_batch_sizes: M must be >= 1");
    const double g2m = gamma_bs * gamma_bs * static_cast<double>(chain_length);
    auto clamp = [&](double b) {
        const auto v = static_cast<Index>(std::llround(b));
        return std::clamp<Index>(v, 1, std::max<Index>(chain_length - 1, 1));
    };
    return {clamp(std::cbrt(g2m / sigma2)), clamp(std::cbrt(8.0 * g2m / (3.0 * sigma2)))};
}

Eigen::VectorXd matrix_power_autocov(const DiscreteChainModel& model, Index lags)
{
    const double mean = model.pi.dot(model.g);
    const Eigen::VectorXd gbar = model.g.array() - mean;
    Eigen::VectorXd v = gbar;
    Eigen::VectorXd out(lags);
    for (Index k = 0; k < lags; ++k) {
        out[k] = (model.pi.array() * gbar.array() * v.array()).sum();
        v = model.Q * v;
    }
    return out;
}

} // namespace momentls
