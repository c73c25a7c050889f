#ifndef MOMENTLS_PROJECTION_HPP
#define MOMENTLS_PROJECTION_HPP

/** @file
 * Moment least-squares projection.
 *
 * Given a finite-support symmetric sequence r, find the sequence
 * m(k) = sum_i w_i a_i^|k| with all a_i in [-1 + delta, 1 - delta] and
 * w_i >= 0 minimizing ||r - m||^2 over l2(Z).  The minimizer has a finitely
 * supported representing measure, which the support reduction solver
 * builds one atom at a time.
 */

#include "momentls/seqcore.hpp"

#include <optional>
#include <stdexcept>

namespace momentls
{

struct ProjectionConfig
{
    double delta = 0.05;       ///< candidate locations lie in [-1 + delta, 1 - delta]
    int grid_size = 1000;      ///< coarse direction-search grid
    /// Optimality slack; defaults to 1e-8 * (1 + ||r||^2) when unset.
    std::optional<double> kkt_tol;
    int max_iter = 500;
    int refine_iters = 30;     ///< golden-section steps around grid minimizers

    void validate() const;
};

struct ProjectionResult
{
    DiscreteMeasure measure;
    LagSequence fitted;          ///< measure materialized to the input length
    double sigma2 = 0.0;         ///< sum_i w_i (1 + a_i) / (1 - a_i)
    double objective = 0.0;      ///< ||r - fitted||^2 over Z, tail included
    double kkt_worst = 0.0;      ///< most negative directional derivative seen last
    int iterations = 0;
    double delta = 0.0;
    double kkt_tol = 0.0;
};

/// Thrown when the solver exhausts max_iter; carries the best iterate.
class ProjectionError : public std::runtime_error
{
public:
    ProjectionError(const std::string& what, ProjectionResult best)
        : std::runtime_error(what), best_(std::move(best))
    {}
    const ProjectionResult& best() const { return best_; }

private:
    ProjectionResult best_;
};

/// Projection of r onto the delta-restricted moment cone by support reduction.
ProjectionResult project(const LagSequence& r, const ProjectionConfig& cfg = {});

/**
 * The same least-squares problem with atoms restricted to a fixed grid of
 * `grid` equispaced locations on [-1 + delta, 1 - delta], solved by a
 * Lawson-Hanson active-set NNLS on the Gram system.  Used as an independent
 * check on `project`.
 */
ProjectionResult grid_nnls_oracle(const LagSequence& r, double delta, int grid = 2001);

/// sum_i w_i (1 + a_i) / (1 - a_i).  Throws std::domain_error if |a_i| >= 1.
double sigma2_of_measure(const DiscreteMeasure& m);

/**
 * Worst slacks of the optimality conditions for a candidate projection,
 * recomputed on an independent probe grid.
 *
 *   min_directional      min_a <m - r, x_a> over the probe grid (want >= -tol)
 *   complementarity      |<m, m> - <m, r>|
 *   support_stationarity max_i |<m - r, x_{a_i}>| over atoms
 */
struct KktReport
{
    double min_directional = 0.0;
    double argmin_location = 0.0;
    double complementarity = 0.0;
    double support_stationarity = 0.0;

    bool within(double tol) const
    {
        return min_directional >= -tol && complementarity <= tol
               && support_stationarity <= tol;
    }
};

KktReport kkt_report(const DiscreteMeasure& m, const LagSequence& r, double delta,
                     int probe_grid = 2001);
KktReport kkt_report(const ProjectionResult& result, const LagSequence& r,
                     int probe_grid = 2001);

} // namespace momentls

#endif // MOMENTLS_PROJECTION_HPP
