#include "momentls/autocov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace momentls
{

namespace
{

// Fixed-order dot product of d[0..n) and d[k..k+n) with four partial sums.
double lagged_dot(const double* d, Index n, Index k)
{
    const double* e = d + k;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    Index t = 0;
    for (; t + 4 <= n; t += 4) {
        s0 += d[t] * e[t];
        s1 += d[t + 1] * e[t + 1];
        s2 += d[t + 2] * e[t + 2];
        s3 += d[t + 3] * e[t + 3];
    }
    for (; t < n; ++t) s0 += d[t] * e[t];
    return (s0 + s1) + (s2 + s3);
}

} // namespace

double WindowSpec::weight(Index k) const
{
    if (k < 0) k = -k;
    switch (kind) {
    case Kind::none:
        return 1.0;
    case Kind::truncation:
        return k < threshold ? 1.0 : 0.0;
    case Kind::parzen:
        if (k >= threshold) return 0.0;
        return 1.0 - std::pow(static_cast<double>(k) / static_cast<double>(threshold), q);
    }
    return 0.0;
}

void WindowSpec::validate() const
{
    if (kind != Kind::none && threshold < 1)
        throw std::invalid_argument("WindowSpec: threshold must be >= 1");
    if (kind == Kind::parzen && q < 1)
        throw std::invalid_argument("WindowSpec: parzen order q must be >= 1");
}

LagSequence empirical_autocov(std::span<const double> samples, CenteringMode mode,
                              Index max_lag)
{
    const Index M = static_cast<Index>(samples.size());
    if (M < 2) throw std::invalid_argument("empirical_autocov: need at least 2 samples");
    for (Index t = 0; t < M; ++t)
        if (!std::isfinite(samples[t]))
            throw std::invalid_argument("empirical_autocov: non-finite sample at index "
                                        + std::to_string(t));

    double center = 0.0;
    if (const auto* known = std::get_if<KnownMean>(&mode)) {
        if (!std::isfinite(known->mu))
            throw std::invalid_argument("empirical_autocov: known mean must be finite");
        center = known->mu;
    } else {
        double s = 0.0;
        for (double x : samples) s += x;
        center = s / static_cast<double>(M);
    }

    std::vector<double> dev(samples.begin(), samples.end());
    for (double& x : dev) x -= center;

    const Index L = (max_lag <= 0 || max_lag > M) ? M : max_lag;
    Eigen::VectorXd r(L);
    const double inv = 1.0 / static_cast<double>(M);
    for (Index k = 0; k < L; ++k) r[k] = lagged_dot(dev.data(), M - k, k) * inv;
    return LagSequence(std::move(r));
}

LagSequence apply_window(const LagSequence& r, const WindowSpec& w)
{
    w.validate();
    Index L = r.size();
    if (w.kind != WindowSpec::Kind::none) L = std::min(L, w.threshold);
    Eigen::VectorXd out(L);
    for (Index k = 0; k < L; ++k) out[k] = r[k] * w.weight(k);
    return LagSequence(std::move(out));
}

Eigen::VectorXd gamma_pairs(const LagSequence& r)
{
    const Index n = (r.size() + 1) / 2;
    Eigen::VectorXd g(n);
    for (Index k = 0; k < n; ++k) g[k] = r.at(2 * k) + r.at(2 * k + 1);
    return g;
}

InitialConditionsReport validate_initial_conditions(const LagSequence& r)
{
    InitialConditionsReport rep;
    for (Index k = 1; k < r.size(); ++k) {
        if (std::abs(r[k]) > r[0]) {
            rep.peak_at_zero = false;
            rep.first_violation = k;
            break;
        }
    }
    rep.note = "elementwise a.s. convergence cannot be checked from a single sample";
    return rep;
}

} // namespace momentls
