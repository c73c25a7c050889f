#include "momentls/rivals.hpp"

#include "momentls/autocov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace momentls
{

namespace
{

double mean_of(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

} // namespace

std::string_view to_string(InitSeqType t)
{
    switch (t) {
    case InitSeqType::positive: return "positive";
    case InitSeqType::monotone: return "monotone";
    case InitSeqType::convex: return "convex";
    }
    return "?";
}

double batch_means(std::span<const double> samples, Index b)
{
    const auto M = static_cast<Index>(samples.size());
    if (b < 1) throw std::invalid_argument("batch_means: batch size must be >= 1");
    const Index a = M / b;
    if (a < 2)
        throw std::invalid_argument("batch_means: need at least 2 batches, got "
                                    + std::to_string(a));
    const double y = mean_of(samples);
    double ss = 0.0;
    for (Index k = 0; k < a; ++k) {
        const double yb = mean_of(samples.subspan(static_cast<std::size_t>(k * b),
                                                  static_cast<std::size_t>(b)));
        ss += (yb - y) * (yb - y);
    }
    return static_cast<double>(b) / static_cast<double>(a - 1) * ss;
}

double overlapping_batch_means(std::span<const double> samples, Index b)
{
    const auto M = static_cast<Index>(samples.size());
    if (b < 1 || b >= M)
        throw std::invalid_argument("overlapping_batch_means: need 1 <= b <= M - 1");
    const double y = mean_of(samples);
    // running window sum, recomputed periodically to bound drift
    double window = 0.0;
    for (Index t = 0; t < b; ++t) window += samples[t];
    double ss = 0.0;
    const double inv_b = 1.0 / static_cast<double>(b);
    for (Index j = 0; j + b <= M; ++j) {
        if (j > 0) {
            if (j % 1024 == 0) {
                window = 0.0;
                for (Index t = j; t < j + b; ++t) window += samples[t];
            } else {
                window += samples[j + b - 1] - samples[j - 1];
            }
        }
        const double d = window * inv_b - y;
        ss += d * d;
    }
    const double md = static_cast<double>(M);
    const double bd = static_cast<double>(b);
    return md * bd / ((md - bd) * (md - bd + 1.0)) * ss;
}

double spectral_bartlett(const LagSequence& r, Index b)
{
    if (b < 1) throw std::invalid_argument("spectral_bartlett: b must be >= 1");
    return apply_window(r, WindowSpec::bartlett(b)).two_sided_sum();
}

double spectral_bartlett(std::span<const double> samples, Index b)
{
    if (b < 1) throw std::invalid_argument("spectral_bartlett: b must be >= 1");
    return spectral_bartlett(empirical_autocov(samples, EmpiricalMean{}, b), b);
}

Eigen::VectorXd greatest_convex_minorant(const Eigen::VectorXd& y)
{
    const Index T = y.size();
    if (T < 1) throw std::invalid_argument("greatest_convex_minorant: empty input");
    std::vector<Index> hull;
    for (Index c = 0; c < T; ++c) {
        while (hull.size() >= 2) {
            const Index a = hull[hull.size() - 2];
            const Index b = hull.back();
            // drop b when it lies on or above the chord from a to c
            if ((y[b] - y[a]) * static_cast<double>(c - a)
                >= (y[c] - y[a]) * static_cast<double>(b - a))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(c);
    }
    Eigen::VectorXd out(T);
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const Index i = hull[h], j = hull[h + 1];
        for (Index k = i; k < j; ++k) {
            const double v = (static_cast<double>(j - k) * y[i] + static_cast<double>(k - i) * y[j])
                             / static_cast<double>(j - i);
            out[k] = std::min(v, y[k]);
        }
    }
    out[T - 1] = y[T - 1];
    return out;
}

InitialSequence initial_sequence(const LagSequence& r, InitSeqType type)
{
    const Eigen::VectorXd g = gamma_pairs(r);
    Index T = 0;
    while (T < g.size() && !(g[T] < 0.0)) ++T;
    if (T == 0)
        throw std::domain_error("initial_sequence: Gamma(0) < 0, estimator undefined");

    InitialSequence out;
    out.truncation = T;
    out.gamma = g.head(T);
    if (type != InitSeqType::positive) {
        for (Index k = 1; k < T; ++k) out.gamma[k] = std::min(out.gamma[k], out.gamma[k - 1]);
        if (type == InitSeqType::convex) out.gamma = greatest_convex_minorant(out.gamma);
    }
    double s = 0.0;
    for (Index k = 0; k < T; ++k) s += out.gamma[k];
    out.sigma2 = -r[0] + 2.0 * s;
    return out;
}

double initial_seq(std::span<const double> samples, InitSeqType type)
{
    const auto M = static_cast<Index>(samples.size());
    if (M < 2) throw std::invalid_argument("initial_seq: need at least 2 samples");
    // grow the computed lag range until Gamma turns negative or all lags are in
    Index L = std::min<Index>(M, 128);
    for (;;) {
        const LagSequence r = empirical_autocov(samples, EmpiricalMean{}, L);
        if (L >= M) return initial_sequence(r, type).sigma2;
        const Eigen::VectorXd g = gamma_pairs(r);  // L is even here: all pairs complete
        if ((g.array() < 0.0).any()) return initial_sequence(r, type).sigma2;
        L = std::min(M, 4 * L);
    }
}

} // namespace momentls
