#include "momentls/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace momentls
{

namespace
{

std::vector<double> equispaced(double lo, double hi, int n)
{
    if (n <= 1 || lo == hi) return {0.5 * (lo + hi)};
    std::vector<double> g(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo + h * i;
    g.back() = hi;
    return g;
}

Eigen::MatrixXd gram(const std::vector<double>& locs)
{
    const auto n = static_cast<Index>(locs.size());
    Eigen::MatrixXd G(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j <= i; ++j) G(i, j) = G(j, i) = geom_inner(locs[i], locs[j]);
    return G;
}

// Symmetric positive-definite solve; retries with diagonal jitter when the
// factorization fails or yields a non-finite solution.
Eigen::VectorXd solve_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& b)
{
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        Eigen::VectorXd x = ldlt.solve(b);
        if (x.allFinite()) return x;
    }
    Eigen::MatrixXd J = G;
    J.diagonal().array() += 1e-12 * G.trace();
    return J.ldlt().solve(b);
}

// One support-reduction step.  `weights` must hold feasible weights for
// `locs` (a new atom enters with weight 0).  Repeatedly solves the
// unrestricted least squares on the support and, while some weight of the
// solution is negative, moves from the feasible point toward it until the
// first weight hits zero and drops that atom.  Returns false if the newest
// atom (last entry) was dropped immediately, i.e. no progress is possible.
bool reduce_support(std::vector<double>& locs, std::vector<double>& weights,
                    const std::vector<double>& rhs_all, std::vector<double>& rhs)
{
    rhs = rhs_all;
    const double newest = locs.back();
    for (;;) {
        const auto n = static_cast<Index>(locs.size());
        Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), n);
        const Eigen::VectorXd v = solve_gram(gram(locs), b);
        if ((v.array() > 0.0).all()) {
            weights.assign(v.data(), v.data() + n);
            return true;
        }
        // step toward v, stopping where the first weight reaches zero
        double t = 1.0;
        Index drop = -1;
        for (Index i = 0; i < n; ++i) {
            if (v[i] <= 0.0) {
                const double denom = weights[i] - v[i];
                const double ti = denom > 0.0 ? weights[i] / denom : 0.0;
                if (ti < t || drop < 0) {
                    t = ti;
                    drop = i;
                }
            }
        }
        for (Index i = 0; i < n; ++i) weights[i] += t * (v[i] - weights[i]);
        weights[drop] = 0.0;

        std::vector<double> nl, nw, nb;
        for (Index i = 0; i < n; ++i) {
            if (weights[i] > 0.0) {
                nl.push_back(locs[i]);
                nw.push_back(weights[i]);
                nb.push_back(rhs[i]);
            }
        }
        const bool newest_kept = std::find(nl.begin(), nl.end(), newest) != nl.end();
        locs = std::move(nl);
        weights = std::move(nw);
        rhs = std::move(nb);
        if (locs.empty()) return newest_kept;
        if (!newest_kept && t == 0.0) {
            // numerically the old support was already optimal
            const auto m = static_cast<Index>(locs.size());
            Eigen::VectorXd bb = Eigen::Map<const Eigen::VectorXd>(rhs.data(), m);
            const Eigen::VectorXd vv = solve_gram(gram(locs), bb);
            if ((vv.array() > 0.0).all()) weights.assign(vv.data(), vv.data() + m);
            return false;
        }
    }
}

// <m - r, x_a> for m with atoms (locs, weights), given <r, x_a> = ra.
double directional(double a, double ra, const std::vector<double>& locs,
                   const std::vector<double>& weights)
{
    double s = -ra;
    for (std::size_t j = 0; j < locs.size(); ++j) s += weights[j] * geom_inner(a, locs[j]);
    return s;
}

struct Candidate
{
    double location;
    double value;
};

// Golden-section minimization of the directional derivative on [lo, hi],
// seeded with a known grid value at `start`.
Candidate refine(const LagSequence& r, const std::vector<double>& locs,
                 const std::vector<double>& weights, double lo, double hi, double start,
                 double start_value, int iters)
{
    Candidate best{start, start_value};
    if (iters <= 0 || !(hi > lo)) return best;
    auto f = [&](double a) { return directional(a, geom_seq_inner(a, r), locs, weights); };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};
    return best;
}

// b(a) = <r, x_a> and its first two derivatives, by simultaneous Horner.
struct SeqInner
{
    double b, db, ddb;
};

SeqInner seq_inner_d2(double a, const LagSequence& r)
{
    const auto& v = r.values();
    const Index L = v.size();
    double p = L > 1 ? 2.0 * v[L - 1] : v[0], dp = 0.0, ddp = 0.0;
    for (Index k = L - 2; k >= 0; --k) {
        ddp = ddp * a + dp;
        dp = dp * a + p;
        p = p * a + (k == 0 ? v[0] : 2.0 * v[k]);
    }
    return {p, dp, 2.0 * ddp};
}

// The lags of r that can matter for <r, x_a> with |a| <= 1 - delta: beyond
// the cut, every term is below double precision relative to max |r(k)|.
// `rest` receives sum_{|k| >= cut} r(k)^2.
LagSequence effective_lags(const LagSequence& r, double delta, double& rest)
{
    const auto& v = r.values();
    const double q = 1.0 - delta;
    Index cut = v.size();
    if (q < 1.0 && q > 0.0) {
        const double need = std::log(1e-17 * delta) / std::log(q);
        if (need + 2 < static_cast<double>(cut)) cut = static_cast<Index>(need) + 2;
    } else if (q <= 0.0) {
        cut = 1;
    }
    rest = 2.0 * v.tail(v.size() - cut).squaredNorm();
    return LagSequence(Eigen::VectorXd(v.head(cut)));
}

// ||r - m||^2 from the residual on the support of r, plus the constant
// `rest` of r beyond it and the closed-form tail of m.
double residual_objective(const LagSequence& r, double rest, const std::vector<double>& locs,
                          const std::vector<double>& weights)
{
    Eigen::VectorXd d = r.values();
    for (std::size_t i = 0; i < locs.size(); ++i) {
        double p = weights[i];
        for (Index k = 0; k < d.size(); ++k) {
            d[k] -= p;
            p *= locs[i];
        }
    }
    double tail = 0.0;
    for (std::size_t i = 0; i < locs.size(); ++i)
        for (std::size_t j = 0; j < locs.size(); ++j) {
            const double p = locs[i] * locs[j];
            tail += weights[i] * weights[j] * 2.0 * std::pow(p, static_cast<double>(d.size()))
                    / (1.0 - p);
        }
    return d[0] * d[0] + 2.0 * d.tail(d.size() - 1).squaredNorm() + rest + tail;
}

// Gradient and Hessian of the objective in (w_1..w_n, a_1..a_n).
void derivatives(const std::vector<double>& locs, const std::vector<double>& weights,
                 const LagSequence& r, Eigen::VectorXd& g, Eigen::MatrixXd& H)
{
    const auto n = static_cast<Index>(locs.size());
    std::vector<SeqInner> bs(locs.size());
    for (Index i = 0; i < n; ++i) bs[i] = seq_inner_d2(locs[i], r);
    g.resize(2 * n);
    H.resize(2 * n, 2 * n);
    for (Index i = 0; i < n; ++i) {
        double kw = 0.0, kaw = 0.0, kaaw = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double p = locs[i] * locs[j], u = 1.0 / (1.0 - p);
            kw += weights[j] * (1.0 + p) * u;
            kaw += weights[j] * 2.0 * locs[j] * u * u;
            H(i, j) = 2.0 * (1.0 + p) * u;
            if (j != i) {
                kaaw += weights[j] * 4.0 * locs[j] * locs[j] * u * u * u;
                H(i, n + j) = 4.0 * weights[j] * locs[i] * u * u;
                H(n + i, n + j) = 4.0 * weights[i] * weights[j] * (1.0 + p) * u * u * u;
            }
        }
        const double a = locs[i], u = 1.0 / (1.0 - a * a);
        const double self2 = (4.0 * a * a + 2.0 * (1.0 + a * a)) * u * u * u;
        g[i] = 2.0 * (kw - bs[i].b);
        g[n + i] = 2.0 * weights[i] * (kaw - bs[i].db);
        H(i, n + i) = 2.0 * (kaw - bs[i].db) + 4.0 * weights[i] * a * u * u;
        H(n + i, n + i) = 2.0 * weights[i] * (-bs[i].ddb + kaaw + weights[i] * self2);
    }
    H.bottomLeftCorner(n, n) = H.topRightCorner(n, n).transpose();
}

struct Support
{
    std::vector<double> locs, weights;
    double f = 0.0;
};

// Levenberg-Marquardt on (weights, locations) jointly, locations clamped to
// [lo, hi], weights to >= 0; atoms whose weight reaches zero are dropped.
void newton_polish(Support& s, const LagSequence& r, double rest, double lo, double hi)
{
    s.f = residual_objective(r, rest, s.locs, s.weights);
    double lambda = 1e-8;
    for (int it = 0; it < 500 && !s.locs.empty(); ++it) {
        const auto n = static_cast<Index>(s.locs.size());
        Eigen::VectorXd g;
        Eigen::MatrixXd H;
        derivatives(s.locs, s.weights, r, g, H);
        if (!g.allFinite() || !H.allFinite()) return;

        // a location held at a bound by its gradient stays out of the step
        std::vector<Index> free;
        for (Index j = 0; j < 2 * n; ++j) {
            if (j >= n) {
                const double a = s.locs[static_cast<std::size_t>(j - n)];
                if ((a <= lo && g[j] > 0.0) || (a >= hi && g[j] < 0.0)) continue;
            }
            free.push_back(j);
        }
        const auto nf = static_cast<Index>(free.size());
        Eigen::MatrixXd Hf(nf, nf);
        Eigen::VectorXd gf(nf);
        for (Index i = 0; i < nf; ++i) {
            gf[i] = g[free[i]];
            for (Index j = 0; j < nf; ++j) Hf(i, j) = H(free[i], free[j]);
        }

        const Eigen::VectorXd scale = Hf.diagonal().cwiseAbs().cwiseMax(1e-300);
        bool accepted = false;
        double gain = 0.0;
        for (int tries = 0; tries < 25; ++tries) {
            Eigen::MatrixXd A = Hf;
            A.diagonal() += lambda * scale;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
            Eigen::VectorXd step = Eigen::VectorXd::Zero(2 * n);
            bool solved = false;
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                const Eigen::VectorXd sf = ldlt.solve(-gf);
                for (Index i = 0; i < nf; ++i) step[free[i]] = sf[i];
                solved = sf.allFinite();
            }
            if (solved) {
                Support t;
                for (Index i = 0; i < n; ++i) {
                    const double w = s.weights[i] + step[i];
                    if (w <= 0.0) continue;
                    t.weights.push_back(w);
                    t.locs.push_back(std::clamp(s.locs[i] + step[n + i], lo, hi));
                }
                t.f = residual_objective(r, rest, t.locs, t.weights);
                if (t.f < s.f) {
                    gain = s.f - t.f;
                    s = std::move(t);
                    accepted = true;
                    lambda = std::max(lambda * 0.1, 1e-14);
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!accepted || gain <= 1e-15 * s.f) return;
    }
}

// Finish a support reduction iterate: Newton-polish it, then greedily
// simplify the support (merge the closest pair, or drop the lightest atom)
// while the polished objective does not go up.  Support reduction reaches a
// single atom only through pairs of ever closer atoms, and such degenerate
// supports converge slowly under Newton too; the simplified support
// converges quadratically.
Support polish(Support s, const LagSequence& r, double rest, double lo, double hi)
{
    newton_polish(s, r, rest, lo, hi);
    while (s.locs.size() > 1) {
        std::vector<std::size_t> order(s.locs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](auto a, auto b) { return s.locs[a] < s.locs[b]; });
        Support sorted;
        for (auto i : order) {
            sorted.locs.push_back(s.locs[i]);
            sorted.weights.push_back(s.weights[i]);
        }
        const auto& L = sorted.locs;
        const auto& W = sorted.weights;

        std::size_t pair = 0;
        for (std::size_t i = 1; i + 1 < L.size(); ++i)
            if (L[i + 1] - L[i] < L[pair + 1] - L[pair]) pair = i;
        Support merged = sorted;
        const double w = W[pair] + W[pair + 1];
        merged.locs[pair] = (W[pair] * L[pair] + W[pair + 1] * L[pair + 1]) / w;
        merged.weights[pair] = w;
        merged.locs.erase(merged.locs.begin() + static_cast<std::ptrdiff_t>(pair) + 1);
        merged.weights.erase(merged.weights.begin() + static_cast<std::ptrdiff_t>(pair) + 1);

        const auto light = static_cast<std::ptrdiff_t>(
            std::min_element(W.begin(), W.end()) - W.begin());
        Support dropped = sorted;
        dropped.locs.erase(dropped.locs.begin() + light);
        dropped.weights.erase(dropped.weights.begin() + light);

        bool simpler = false;
        for (Support* c : {&merged, &dropped}) {
            newton_polish(*c, r, rest, lo, hi);
            if (c->f <= s.f) {
                s = std::move(*c);
                simpler = true;
                break;
            }
        }
        if (!simpler) break;
    }
    // exact weights for the final locations
    if (!s.locs.empty()) {
        const auto n = static_cast<Index>(s.locs.size());
        Eigen::VectorXd b(n);
        for (Index i = 0; i < n; ++i) b[i] = geom_seq_inner(s.locs[i], r);
        const Eigen::VectorXd w = solve_gram(gram(s.locs), b);
        if ((w.array() > 0.0).all()) {
            std::vector<double> nw(w.data(), w.data() + n);
            const double f = residual_objective(r, rest, s.locs, nw);
            if (f <= s.f) {
                s.weights = std::move(nw);
                s.f = f;
            }
        }
    }
    return s;
}

double default_tol(const LagSequence& r) { return 1e-8 * (1.0 + r.squared_norm()); }

ProjectionResult finish(const LagSequence& r, const std::vector<double>& locs,
                        const std::vector<double>& weights, double delta, double tol,
                        double kkt_worst, int iterations)
{
    std::vector<GeometricAtom> atoms;
    for (std::size_t i = 0; i < locs.size(); ++i) atoms.push_back({locs[i], weights[i]});
    ProjectionResult res;
    res.measure = DiscreteMeasure(std::move(atoms));
    res.fitted = materialize(res.measure, r.size());
    res.sigma2 = sigma2_of_measure(res.measure);
    res.objective = sq_distance(r, res.measure);
    res.kkt_worst = kkt_worst;
    res.iterations = iterations;
    res.delta = delta;
    res.kkt_tol = tol;
    return res;
}

} // namespace

void ProjectionConfig::validate() const
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("ProjectionConfig: delta must lie in (0, 1]");
    if (grid_size < 3) throw std::invalid_argument("ProjectionConfig: grid_size must be >= 3");
    if (kkt_tol && !(*kkt_tol > 0.0))
        throw std::invalid_argument("ProjectionConfig: kkt_tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("ProjectionConfig: max_iter must be >= 1");
    if (refine_iters < 0)
        throw std::invalid_argument("ProjectionConfig: refine_iters must be >= 0");
}

ProjectionResult project(const LagSequence& r, const ProjectionConfig& cfg)
{
    cfg.validate();
    const double tol = cfg.kkt_tol.value_or(default_tol(r));
    const double lo = -1.0 + cfg.delta;
    const double hi = 1.0 - cfg.delta;
    const std::vector<double> grid = equispaced(lo, hi, cfg.grid_size);
    const auto n = grid.size();

    double rest = 0.0;
    const LagSequence rs = effective_lags(r, cfg.delta, rest);
    std::vector<double> r_grid(n);
    for (std::size_t i = 0; i < n; ++i) r_grid[i] = geom_seq_inner(grid[i], rs);

    std::vector<double> locs, weights, rhs;
    std::vector<double> d_grid(n);
    double objective = r.squared_norm();
    double kkt_worst = 0.0;
    int iter = 0;
    bool converged = false;
    bool polished = false;

    while (iter < cfg.max_iter) {
        ++iter;
        for (std::size_t i = 0; i < n; ++i)
            d_grid[i] = directional(grid[i], r_grid[i], locs, weights);

        // local minima of the grid values; ties resolve to the smallest location
        std::vector<std::size_t> minima;
        for (std::size_t i = 0; i < n; ++i) {
            const bool left = i == 0 || d_grid[i] < d_grid[i - 1];
            const bool right = i + 1 == n || d_grid[i] <= d_grid[i + 1];
            if (left && right) minima.push_back(i);
        }
        if (minima.empty()) minima.push_back(static_cast<std::size_t>(
            std::min_element(d_grid.begin(), d_grid.end()) - d_grid.begin()));
        std::stable_sort(minima.begin(), minima.end(),
                         [&](std::size_t a, std::size_t b) { return d_grid[a] < d_grid[b]; });

        auto refine_at = [&](std::size_t i) {
            const double a = i == 0 ? grid[0] : grid[i - 1];
            const double b = i + 1 == n ? grid[n - 1] : grid[i + 1];
            return refine(rs, locs, weights, a, b, grid[i], d_grid[i], cfg.refine_iters);
        };

        Candidate best = refine_at(minima.front());
        if (best.value >= -tol) {
            // confirm with the remaining local minima before declaring optimality
            for (std::size_t m = 1; m < minima.size() && m < 16; ++m) {
                const Candidate c = refine_at(minima[m]);
                if (c.value < best.value) best = c;
            }
        }
        kkt_worst = best.value;
        const bool duplicate = std::any_of(locs.begin(), locs.end(), [&](double a) {
            return std::abs(a - best.location) < DiscreteMeasure::kMergeTolerance;
        });

        if (best.value < -tol && !duplicate) {
            std::vector<double> rhs_all = rhs;
            rhs_all.push_back(geom_seq_inner(best.location, rs));
            locs.push_back(best.location);
            weights.push_back(0.0);
            const bool progressed = reduce_support(locs, weights, rhs_all, rhs);
            const double next_objective = residual_objective(rs, rest, locs, weights);
            const double decrease = objective - next_objective;
            objective = next_objective;
            if (progressed && decrease >= 1e-14 * (1.0 + std::abs(objective))) {
                polished = false;
                continue;
            }
        }

        // Support reduction is optimal or stalled.  Polish once; if that
        // helped, go round again to re-check optimality.
        if (polished) {
            converged = true;
            break;
        }
        polished = true;
        Support p = polish({locs, weights, objective}, rs, rest, lo, hi);
        if (!(p.f < objective)) {
            converged = true;
            break;
        }
        if (objective - p.f < 1e-14 * (1.0 + p.f)) {
            converged = true;
            break;
        }
        locs = std::move(p.locs);
        weights = std::move(p.weights);
        objective = p.f;
        rhs.resize(locs.size());
        for (std::size_t i = 0; i < locs.size(); ++i) rhs[i] = geom_seq_inner(locs[i], rs);
    }

    ProjectionResult res = finish(r, locs, weights, cfg.delta, tol, kkt_worst, iter);
    if (!converged)
        throw ProjectionError("project: no convergence after " + std::to_string(cfg.max_iter)
                                  + " iterations (kkt_worst = " + std::to_string(kkt_worst)
                                  + ")",
                              std::move(res));
    return res;
}

ProjectionResult grid_nnls_oracle(const LagSequence& r, double delta, int grid_count)
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("grid_nnls_oracle: delta must lie in (0, 1]");
    if (grid_count < 101) throw std::invalid_argument("grid_nnls_oracle: grid must be >= 101");

    const std::vector<double> grid = equispaced(-1.0 + delta, 1.0 - delta, grid_count);
    const auto n = grid.size();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = geom_seq_inner(grid[i], r);
    const double tol = 1e-10 * (1.0 + r.squared_norm());

    // Lawson-Hanson on the Gram form: passive set P, gradient b - K w
    std::vector<std::size_t> passive;
    std::vector<double> w;
    const std::size_t max_outer = 3 * n;
    std::size_t outer = 0;
    double worst = 0.0;
    bool done = false;
    for (; outer < max_outer; ++outer) {
        std::size_t pick = n;
        double best = tol;
        worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double g = b[i];
            for (std::size_t j = 0; j < passive.size(); ++j)
                g -= w[j] * geom_inner(grid[i], grid[passive[j]]);
            worst = std::min(worst, -g);
            if (std::find(passive.begin(), passive.end(), i) != passive.end()) continue;
            if (g > best) {
                best = g;
                pick = i;
            }
        }
        if (pick == n) {
            done = true;
            break;
        }
        passive.push_back(pick);
        w.push_back(0.0);

        for (;;) {
            std::vector<double> locs;
            Eigen::VectorXd bp(static_cast<Index>(passive.size()));
            for (std::size_t j = 0; j < passive.size(); ++j) {
                locs.push_back(grid[passive[j]]);
                bp[static_cast<Index>(j)] = b[passive[j]];
            }
            const Eigen::VectorXd z = solve_gram(gram(locs), bp);
            if ((z.array() > 0.0).all()) {
                w.assign(z.data(), z.data() + z.size());
                break;
            }
            double alpha = 1.0;
            std::size_t hit = passive.size();
            for (std::size_t j = 0; j < passive.size(); ++j) {
                if (z[static_cast<Index>(j)] <= 0.0) {
                    const double denom = w[j] - z[static_cast<Index>(j)];
                    const double aj = denom > 0.0 ? w[j] / denom : 0.0;
                    if (hit == passive.size() || aj < alpha) {
                        alpha = aj;
                        hit = j;
                    }
                }
            }
            for (std::size_t j = 0; j < passive.size(); ++j)
                w[j] += alpha * (z[static_cast<Index>(j)] - w[j]);
            w[hit] = 0.0;
            const bool entering_dropped = hit + 1 == passive.size() && alpha == 0.0;
            std::vector<std::size_t> np;
            std::vector<double> nw;
            for (std::size_t j = 0; j < passive.size(); ++j) {
                if (w[j] > 0.0) {
                    np.push_back(passive[j]);
                    nw.push_back(w[j]);
                }
            }
            passive = std::move(np);
            w = std::move(nw);
            if (entering_dropped) {
                // round-off rejected the entering index: current point is optimal
                done = true;
                break;
            }
            if (passive.empty()) break;
        }
        if (done) break;
    }

    std::vector<double> locs;
    for (std::size_t j : passive) locs.push_back(grid[j]);
    ProjectionResult res = finish(r, locs, w, delta, tol, worst, static_cast<int>(outer));
    if (!done)
        throw ProjectionError("grid_nnls_oracle: no convergence", std::move(res));
    return res;
}

double sigma2_of_measure(const DiscreteMeasure& m)
{
    double s = 0.0;
    for (const auto& a : m.atoms()) {
        if (!(std::abs(a.location) < 1.0))
            throw std::domain_error("sigma2_of_measure: atom at |location| >= 1");
        s += a.weight * (1.0 + a.location) / (1.0 - a.location);
    }
    return s;
}

KktReport kkt_report(const DiscreteMeasure& m, const LagSequence& r, double delta,
                     int probe_grid)
{
    std::vector<double> locs, weights;
    for (const auto& a : m.atoms()) {
        locs.push_back(a.location);
        weights.push_back(a.weight);
    }
    KktReport rep;
    rep.min_directional = std::numeric_limits<double>::infinity();
    for (double a : equispaced(-1.0 + delta, 1.0 - delta, std::max(probe_grid, 1))) {
        const double d = directional(a, geom_seq_inner(a, r), locs, weights);
        if (d < rep.min_directional) {
            rep.min_directional = d;
            rep.argmin_location = a;
        }
    }
    rep.complementarity = std::abs(measure_inner(m, m) - measure_seq_inner(m, r));
    for (std::size_t i = 0; i < locs.size(); ++i) {
        const double d = directional(locs[i], geom_seq_inner(locs[i], r), locs, weights);
        rep.support_stationarity = std::max(rep.support_stationarity, std::abs(d));
    }
    return rep;
}

KktReport kkt_report(const ProjectionResult& result, const LagSequence& r, int probe_grid)
{
    return kkt_report(result.measure, r, result.delta, probe_grid);
}

} // namespace momentls
