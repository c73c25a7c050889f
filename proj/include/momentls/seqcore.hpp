#ifndef MOMENTLS_SEQCORE_HPP
#define MOMENTLS_SEQCORE_HPP

/** @file
 * Symmetric lag sequences, discrete measures of geometric atoms, and the
 * closed-form inner products on l2(Z) that connect them.
 *
 * A sequence m on Z with m(k) = m(-k) is stored by its nonnegative lags only.
 * A geometric atom (a, w) stands for the two-sided sequence w * a^|k|.
 */

#include <Eigen/Dense>

#include <initializer_list>
#include <span>
#include <vector>

namespace momentls
{

using Index = Eigen::Index;

/**
 * Finite-support symmetric sequence on Z, stored as lags 0..L-1.
 *
 * Values at |k| >= L are zero.  Construction rejects empty or non-finite
 * input, so every LagSequence has L >= 1.
 */
class LagSequence
{
public:
    LagSequence() : values_(Eigen::VectorXd::Zero(1)) {}
    explicit LagSequence(Eigen::VectorXd values);
    LagSequence(std::initializer_list<double> values);

    static LagSequence zeros(Index length);

    Index size() const { return values_.size(); }

    /// Value at lag k (either sign); zero outside the support.
    double at(Index k) const
    {
        if (k < 0) k = -k;
        return k < values_.size() ? values_[k] : 0.0;
    }
    double operator[](Index k) const { return values_[k]; }

    const Eigen::VectorXd& values() const { return values_; }

    /// r(0) + 2 * sum_{k>=1} r(k), the two-sided sum over Z.
    double two_sided_sum() const;

    /// ||r||^2 over Z.
    double squared_norm() const;

private:
    Eigen::VectorXd values_;
};

struct GeometricAtom
{
    double location = 0.0;
    double weight = 0.0;
};

/**
 * Finite positive measure on [-1, 1] made of point masses.
 *
 * Atoms are kept sorted by location with strictly increasing locations.
 * Atoms whose locations are closer than kMergeTolerance are merged: weights
 * add and the location becomes the weight-averaged location.  Zero-weight
 * atoms are dropped.
 */
class DiscreteMeasure
{
public:
    static constexpr double kMergeTolerance = 1e-8;

    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<GeometricAtom> atoms);
    DiscreteMeasure(std::initializer_list<GeometricAtom> atoms)
        : DiscreteMeasure(std::vector<GeometricAtom>(atoms))
    {}

    std::span<const GeometricAtom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double total_mass() const;
    /// max_i |location_i|; zero for the empty measure.
    double max_abs_location() const;
    /// Weight-averaged location; zero for the empty measure.
    double mean_location() const;

private:
    std::vector<GeometricAtom> atoms_;
};

/// A moment sequence m(k) = sum_i w_i a_i^|k| with its lags cached.
class MomentSequence
{
public:
    MomentSequence(DiscreteMeasure measure, Index length);

    const DiscreteMeasure& measure() const { return measure_; }
    const LagSequence& lags() const { return lags_; }

private:
    DiscreteMeasure measure_;
    LagSequence lags_;
};

/// <a, b> = a(0) b(0) + 2 sum_{k>=1} a(k) b(k).
double seq_inner(const LagSequence& a, const LagSequence& b);

/// <x_a, x_b> = (1 + ab) / (1 - ab).  Throws std::domain_error if |ab| >= 1.
double geom_inner(double alpha, double beta);

/// <x_a, r> = r(0) + 2 sum_{k=1}^{L-1} r(k) a^k, by Horner's rule.
double geom_seq_inner(double alpha, const LagSequence& r);

/// <m1, m2> for the moment sequences of two measures, in closed form.
double measure_inner(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// <m, r> where m is the moment sequence of a measure.
double measure_seq_inner(const DiscreteMeasure& m, const LagSequence& r);

/**
 * sum_{|k| >= L} m(k)^2 for the moment sequence of `m`:
 * sum_ij w_i w_j 2 (a_i a_j)^L / (1 - a_i a_j).  With L = 0 the k = 0 term
 * is counted once, giving ||m||^2.
 */
double tail_sq_norm(const DiscreteMeasure& m, Index length);

/// ||r - m||^2 over all of Z: in-support residual plus the exact tail of m.
double sq_distance(const LagSequence& r, const DiscreteMeasure& m);

/// ||m1 - m2||^2 over Z in closed form.
double sq_distance(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Lags 0..L-1 of the moment sequence.  Throws if any |location| >= 1.
LagSequence materialize(const DiscreteMeasure& m, Index length);

/// Default cap on the length accepted by hausdorff_transform.
inline constexpr Index kHausdorffMaxLength = 60;

/**
 * T(m; a, b)(k) = (b - a)^-k sum_{i<=k} C(k, i) m(i) (-a)^(k-i).
 *
 * m is a one-sided sequence m(0..K-1).  The transform maps [a, b]-moment
 * sequences to [0, 1]-moment (completely monotone) sequences.  Throws
 * std::invalid_argument if a >= b, m is empty or longer than max_length.
 */
Eigen::VectorXd hausdorff_transform(const Eigen::VectorXd& m, double a, double b,
                                    Index max_length = kHausdorffMaxLength);

struct MonotoneCheck
{
    bool ok = true;
    int order = -1;      ///< difference order of the first violation
    Index index = -1;    ///< start index of the first violation
    double value = 0.0;  ///< (-1)^order Delta^order m(index)
};

/**
 * Checks (-1)^j Delta^j m(i) >= -tol for j = 0..order and every i for which
 * the difference is defined.  A negative tol selects the default
 * 1e-10 * max(1, |m(0)|).
 */
MonotoneCheck check_k_monotone(const Eigen::VectorXd& m, int order, double tol = -1.0);

} // namespace momentls

#endif // MOMENTLS_SEQCORE_HPP
