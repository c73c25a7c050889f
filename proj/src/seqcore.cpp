#include "momentls/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace momentls
{

LagSequence::LagSequence(Eigen::VectorXd values) : values_(std::move(values))
{
    if (values_.size() < 1)
        throw std::invalid_argument("LagSequence: length must be at least 1");
    if (!values_.allFinite())
        throw std::invalid_argument("LagSequence: values must be finite");
}

LagSequence::LagSequence(std::initializer_list<double> values)
    : LagSequence(Eigen::Map<const Eigen::VectorXd>(values.begin(),
                                                    static_cast<Index>(values.size())))
{}

LagSequence LagSequence::zeros(Index length)
{
    return LagSequence(Eigen::VectorXd::Zero(std::max<Index>(length, 1)));
}

double LagSequence::two_sided_sum() const
{
    double tail = 0.0;
    for (Index k = 1; k < values_.size(); ++k) tail += values_[k];
    return values_[0] + 2.0 * tail;
}

double LagSequence::squared_norm() const { return seq_inner(*this, *this); }

DiscreteMeasure::DiscreteMeasure(std::vector<GeometricAtom> atoms)
{
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location) || !std::isfinite(a.weight))
            throw std::invalid_argument("DiscreteMeasure: non-finite atom");
        if (a.weight < 0.0)
            throw std::invalid_argument("DiscreteMeasure: negative weight "
                                        + std::to_string(a.weight));
        if (std::abs(a.location) > 1.0)
            throw std::invalid_argument("DiscreteMeasure: location outside [-1, 1]: "
                                        + std::to_string(a.location));
    }
    std::erase_if(atoms, [](const GeometricAtom& a) { return a.weight == 0.0; });
    std::sort(atoms.begin(), atoms.end(),
              [](const GeometricAtom& x, const GeometricAtom& y) {
                  return x.location < y.location;
              });
    atoms_.reserve(atoms.size());
    for (const auto& a : atoms) {
        if (!atoms_.empty() && a.location - atoms_.back().location < kMergeTolerance) {
            auto& last = atoms_.back();
            const double w = last.weight + a.weight;
            last.location = (last.weight * last.location + a.weight * a.location) / w;
            last.weight = w;
        } else {
            atoms_.push_back(a);
        }
    }
}

double DiscreteMeasure::total_mass() const
{
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
}

double DiscreteMeasure::max_abs_location() const
{
    double s = 0.0;
    for (const auto& a : atoms_) s = std::max(s, std::abs(a.location));
    return s;
}

double DiscreteMeasure::mean_location() const
{
    const double mass = total_mass();
    if (mass == 0.0) return 0.0;
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * a.location;
    return s / mass;
}

MomentSequence::MomentSequence(DiscreteMeasure measure, Index length)
    : measure_(std::move(measure)), lags_(materialize(measure_, length))
{}

double seq_inner(const LagSequence& a, const LagSequence& b)
{
    const Index n = std::min(a.size(), b.size());
    double tail = 0.0;
    for (Index k = 1; k < n; ++k) tail += a[k] * b[k];
    return a[0] * b[0] + 2.0 * tail;
}

double geom_inner(double alpha, double beta)
{
    const double p = alpha * beta;
    if (!(std::abs(p) < 1.0))
        throw std::domain_error("geom_inner: |alpha * beta| must be < 1");
    return (1.0 + p) / (1.0 - p);
}

double geom_seq_inner(double alpha, const LagSequence& r)
{
    const auto& v = r.values();
    double tail = 0.0;
    for (Index k = v.size() - 1; k >= 1; --k) tail = (tail + v[k]) * alpha;
    return v[0] + 2.0 * tail;
}

double measure_inner(const DiscreteMeasure& a, const DiscreteMeasure& b)
{
    double s = 0.0;
    for (const auto& x : a.atoms())
        for (const auto& y : b.atoms())
            s += x.weight * y.weight * geom_inner(x.location, y.location);
    return s;
}

double measure_seq_inner(const DiscreteMeasure& m, const LagSequence& r)
{
    double s = 0.0;
    for (const auto& a : m.atoms()) s += a.weight * geom_seq_inner(a.location, r);
    return s;
}

double tail_sq_norm(const DiscreteMeasure& m, Index length)
{
    if (length <= 0) return measure_inner(m, m);
    double s = 0.0;
    for (const auto& x : m.atoms()) {
        for (const auto& y : m.atoms()) {
            const double p = x.location * y.location;
            if (!(std::abs(p) < 1.0))
                throw std::domain_error("tail_sq_norm: atom at |location| = 1");
            s += x.weight * y.weight * 2.0 * std::pow(p, static_cast<double>(length))
                 / (1.0 - p);
        }
    }
    return s;
}

double sq_distance(const LagSequence& r, const DiscreteMeasure& m)
{
    const LagSequence fitted = materialize(m, r.size());
    const Eigen::VectorXd d = r.values() - fitted.values();
    return d[0] * d[0] + 2.0 * d.tail(d.size() - 1).squaredNorm()
           + tail_sq_norm(m, r.size());
}

double sq_distance(const DiscreteMeasure& a, const DiscreteMeasure& b)
{
    const double d = measure_inner(a, a) + measure_inner(b, b) - 2.0 * measure_inner(a, b);
    return std::max(d, 0.0);
}

LagSequence materialize(const DiscreteMeasure& m, Index length)
{
    if (length < 1) throw std::invalid_argument("materialize: length must be >= 1");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(length);
    for (const auto& a : m.atoms()) {
        if (!(std::abs(a.location) < 1.0))
            throw std::domain_error("materialize: atom at |location| >= 1 is not in l2");
        double p = a.weight;
        for (Index k = 0; k < length; ++k) {
            out[k] += p;
            p *= a.location;
            if (p == 0.0) break;
        }
    }
    return LagSequence(std::move(out));
}

Eigen::VectorXd hausdorff_transform(const Eigen::VectorXd& m, double a, double b,
                                    Index max_length)
{
    if (!(a < b)) throw std::invalid_argument("hausdorff_transform: requires a < b");
    const Index K = m.size();
    if (K < 1) throw std::invalid_argument("hausdorff_transform: empty sequence");
    if (K > max_length)
        throw std::invalid_argument("hausdorff_transform: length exceeds cap of "
                                    + std::to_string(max_length));

    Eigen::VectorXd out(K);
    std::vector<double> row{1.0};  // Pascal row C(k, .)
    const double scale = 1.0 / (b - a);
    for (Index k = 0; k < K; ++k) {
        if (k > 0) {
            std::vector<double> next(static_cast<std::size_t>(k) + 1, 1.0);
            for (Index i = 1; i < k; ++i) next[i] = row[i - 1] + row[i];
            row = std::move(next);
        }
        // sum_i C(k,i) m(i) (-a)^(k-i), accumulated from i = k downwards
        double s = 0.0;
        double pw = 1.0;
        for (Index i = k; i >= 0; --i) {
            s += row[i] * m[i] * pw;
            pw *= -a;
        }
        out[k] = s * std::pow(scale, static_cast<double>(k));
    }
    return out;
}

MonotoneCheck check_k_monotone(const Eigen::VectorXd& m, int order, double tol)
{
    if (order < 0) throw std::invalid_argument("check_k_monotone: order must be >= 0");
    if (m.size() <= order)
        throw std::invalid_argument("check_k_monotone: sequence shorter than order + 1");
    if (tol < 0.0) tol = 1e-10 * std::max(1.0, std::abs(m[0]));

    Eigen::VectorXd diff = m;  // Delta^j m, length K - j
    for (int j = 0; j <= order; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (Index i = 0; i < diff.size(); ++i) {
            const double v = sign * diff[i];
            if (v < -tol) return {false, j, i, v};
        }
        if (j < order) {
            Eigen::VectorXd next = diff.tail(diff.size() - 1) - diff.head(diff.size() - 1);
            diff = std::move(next);
        }
    }
    return {};
}

} // namespace momentls
