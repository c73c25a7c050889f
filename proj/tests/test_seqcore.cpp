#include "momentls/seqcore.hpp"

#include "momentls/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace momentls;

namespace
{

// Unit atom materialized by direct powers, independent of materialize().
LagSequence powers(double a, Index L)
{
    Eigen::VectorXd v(L);
    for (Index k = 0; k < L; ++k) v[k] = std::pow(a, static_cast<double>(k));
    return LagSequence(v);
}

} // namespace

TEST_CASE("seq_inner")
{
    CHECK(seq_inner({1.0}, {1.0}) == 1.0);
    CHECK(seq_inner({2.0, 1.0, 0.5}, {1.0, 1.0, 1.0}) == doctest::Approx(5.0));
    CHECK(seq_inner({1.0, 0.0}, {0.0, 1.0}) == 0.0);
    // shorter support truncates the sum
    CHECK(seq_inner({1.0, 2.0, 3.0}, {1.0, 1.0}) == doctest::Approx(5.0));
}

TEST_CASE("geom_inner closed form")
{
    CHECK(geom_inner(0.0, 0.0) == 1.0);
    CHECK(geom_inner(0.5, 0.5) == doctest::Approx(5.0 / 3.0));
    CHECK(geom_inner(0.9, -0.9) == doctest::Approx(0.19 / 1.81).epsilon(1e-14));
    CHECK_THROWS_AS(geom_inner(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(geom_inner(-1.0, 1.0), std::domain_error);
}

TEST_CASE("geom_inner matches truncated series within the tail bound")
{
    Rng rng(11);
    const Index L = 400;
    for (int i = 0; i < 200; ++i) {
        const double a = -0.99 + 1.98 * rng.uniform();
        const double b = -0.99 + 1.98 * rng.uniform();
        const double series = seq_inner(powers(a, L), powers(b, L));
        const double p = std::abs(a * b);
        const double bound = 2.0 * std::pow(p, L) / (1.0 - p) + 1e-12 * (1.0 + series);
        CHECK(std::abs(geom_inner(a, b) - series) <= bound);
        CHECK(geom_inner(a, b) > 0.0);
    }
}

TEST_CASE("geom_seq_inner")
{
    const LagSequence r{1.0, 1.0};
    CHECK(geom_seq_inner(0.0, LagSequence{3.0, 7.0, -2.0}) == 3.0);
    CHECK(geom_seq_inner(0.5, r) == doctest::Approx(2.0));
    CHECK(geom_seq_inner(-0.5, r) == doctest::Approx(0.0));

    Rng rng(5);
    Eigen::VectorXd v(30);
    for (Index k = 0; k < 30; ++k) v[k] = rng.normal();
    const LagSequence s(v);
    for (double a : {-0.95, -0.3, 0.0, 0.41, 0.97})
        CHECK(geom_seq_inner(a, s) == doctest::Approx(seq_inner(powers(a, 30), s)).epsilon(1e-12));
}

TEST_CASE("materialize")
{
    const LagSequence m = materialize(DiscreteMeasure{{0.5, 2.0}}, 3);
    CHECK(m[0] == 2.0);
    CHECK(m[1] == 1.0);
    CHECK(m[2] == 0.5);

    const LagSequence z = materialize(DiscreteMeasure{}, 2);
    CHECK(z.size() == 2);
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);

    const LagSequence two = materialize(DiscreteMeasure{{0.9, 1.0}, {-0.9, 1.0}}, 3);
    CHECK(two[0] == doctest::Approx(2.0));
    CHECK(two[1] == doctest::Approx(0.0));
    CHECK(two[2] == doctest::Approx(1.62));

    CHECK_THROWS_AS(materialize(DiscreteMeasure{{1.0, 1.0}}, 3), std::domain_error);
}

TEST_CASE("materialize is linear in the measure")
{
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<GeometricAtom> a1, a2, both;
        for (int i = 0; i < 3; ++i) {
            a1.push_back({-0.9 + 1.8 * rng.uniform(), rng.uniform()});
            a2.push_back({-0.9 + 1.8 * rng.uniform(), rng.uniform()});
        }
        both = a1;
        both.insert(both.end(), a2.begin(), a2.end());
        const auto s = materialize(DiscreteMeasure(both), 25).values();
        const auto t = (materialize(DiscreteMeasure(a1), 25).values()
                        + materialize(DiscreteMeasure(a2), 25).values())
                           .eval();
        CHECK((s - t).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("DiscreteMeasure invariants")
{
    const DiscreteMeasure m{{0.3, 1.0}, {-0.2, 2.0}, {0.3 + 1e-10, 1.0}, {0.5, 0.0}};
    REQUIRE(m.size() == 2);
    CHECK(m.atoms()[0].location == -0.2);
    CHECK(m.atoms()[1].weight == 2.0);
    CHECK(m.atoms()[1].location == doctest::Approx(0.3 + 5e-11).epsilon(1e-14));
    CHECK(m.total_mass() == 4.0);
    CHECK_THROWS_AS(DiscreteMeasure({{0.1, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure({{1.5, 1.0}}), std::invalid_argument);

    const MomentSequence ms(DiscreteMeasure{{0.5, 2.0}, {-0.25, 1.0}}, 10);
    CHECK(ms.lags()[0] == doctest::Approx(ms.measure().total_mass()));
}

TEST_CASE("LagSequence rejects bad input")
{
    CHECK_THROWS_AS(LagSequence(Eigen::VectorXd()), std::invalid_argument);
    CHECK_THROWS_AS(LagSequence({1.0, NAN}), std::invalid_argument);
    const LagSequence r{2.0, 1.0};
    CHECK(r.at(-1) == 1.0);
    CHECK(r.at(5) == 0.0);
    CHECK(r.two_sided_sum() == 4.0);
}

TEST_CASE("tail and distance formulas agree with long truncations")
{
    const DiscreteMeasure m{{0.8, 1.5}, {-0.6, 0.7}, {0.1, 0.2}};
    const LagSequence long_m = materialize(m, 600);
    const Eigen::VectorXd& v = long_m.values();
    const Index L = 17;
    const double direct_tail = 2.0 * v.segment(L, v.size() - L).squaredNorm();
    CHECK(tail_sq_norm(m, L) == doctest::Approx(direct_tail).epsilon(1e-12));
    CHECK(tail_sq_norm(m, 0) == doctest::Approx(seq_inner(long_m, long_m)).epsilon(1e-12));
    CHECK(measure_inner(m, m) == doctest::Approx(seq_inner(long_m, long_m)).epsilon(1e-12));

    const LagSequence r{3.0, -1.0, 0.5, 0.25};
    const Eigen::VectorXd rr = Eigen::VectorXd::Zero(600).eval();
    Eigen::VectorXd padded = rr;
    padded.head(4) = r.values();
    const double direct = seq_inner(LagSequence(padded - v), LagSequence(padded - v));
    CHECK(sq_distance(r, m) == doctest::Approx(direct).epsilon(1e-12));

    const DiscreteMeasure n{{0.5, 1.0}};
    const LagSequence long_n = materialize(n, 600);
    const LagSequence diff(long_m.values() - long_n.values());
    CHECK(sq_distance(m, n) == doctest::Approx(seq_inner(diff, diff)).epsilon(1e-10));
}

TEST_CASE("hausdorff_transform")
{
    Rng rng(8);
    Eigen::VectorXd m(12);
    for (Index k = 0; k < 12; ++k) m[k] = rng.normal();
    CHECK(hausdorff_transform(m, 0.0, 1.0) == m);

    const Eigen::VectorXd t = hausdorff_transform(Eigen::Vector2d(1.0, 0.5), -1.0, 1.0);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == doctest::Approx(0.75));

    CHECK(hausdorff_transform(Eigen::VectorXd::Constant(1, 4.5), -3.0, 2.0)[0] == 4.5);
    CHECK_THROWS_AS(hausdorff_transform(m, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hausdorff_transform(Eigen::VectorXd::Zero(61), 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("hausdorff transform of an [a,b]-moment sequence is completely monotone")
{
    Rng rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const double a = -0.9 + 0.8 * rng.uniform();
        const double b = a + 0.1 + (0.9 - a - 0.1) * rng.uniform();
        std::vector<GeometricAtom> atoms;
        for (int i = 0; i < 4; ++i) atoms.push_back({a + (b - a) * rng.uniform(), rng.uniform()});
        const LagSequence m = materialize(DiscreteMeasure(atoms), 12);
        const Eigen::VectorXd t = hausdorff_transform(m.values(), a, b);
        CHECK(check_k_monotone(t, 5).ok);
    }
}

TEST_CASE("check_k_monotone")
{
    CHECK(check_k_monotone(Eigen::Vector3d(3.0, 1.0, 0.5), 1).ok);
    const MonotoneCheck bad = check_k_monotone(Eigen::Vector2d(1.0, 2.0), 1);
    CHECK_FALSE(bad.ok);
    CHECK(bad.order == 1);
    CHECK(bad.index == 0);
    CHECK(check_k_monotone(Eigen::Vector3d(1.0, 0.5, 0.25), 2).ok);
    // decreasing but concave fails at order 2
    const MonotoneCheck concave = check_k_monotone(Eigen::Vector3d(1.0, 0.9, 0.5), 2);
    CHECK_FALSE(concave.ok);
    CHECK(concave.order == 2);
    CHECK_THROWS_AS(check_k_monotone(Eigen::Vector2d(1.0, 0.5), 2), std::invalid_argument);
}
