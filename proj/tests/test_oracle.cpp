#include "momentls/oracle.hpp"

#include "momentls/projection.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace momentls;

namespace
{

void check_consistent(const TruthBundle& t)
{
    const LagSequence m = materialize(t.F, t.gamma.size());
    CHECK((m.values() - t.gamma.values()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(sigma2_of_measure(t.F) - t.sigma2) <= 1e-10 * (1.0 + std::abs(t.sigma2)));
}

} // namespace

TEST_CASE("discrete truth agrees with matrix powers")
{
    for (Index d : {2, 5, 20, 100, 200}) {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto model = build_random_mh(d, seed);
            const TruthBundle t = discrete_truth(model, 21, 4000);
            const Eigen::VectorXd direct = matrix_power_autocov(model, 21);
            CHECK((t.gamma.values() - direct).cwiseAbs().maxCoeff() <= 1e-10);
            check_consistent(t);
            CHECK(t.delta0 > 0.0);
            CHECK(t.delta0 <= 1.0);
        }
    }
}

TEST_CASE("constant g has no autocovariance")
{
    auto model = build_random_mh(10, 4);
    model.g.setConstant(3.0);
    const TruthBundle t = discrete_truth(model, 5, 1000);
    CHECK(t.F.empty());
    CHECK(t.sigma2 == 0.0);
    CHECK(t.gamma.values().cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.delta0 == 1.0);
}

TEST_CASE("two-state flip chain")
{
    const double p = 0.2;
    Eigen::Matrix2d P;
    P << 1 - p, p, p, 1 - p;
    const auto model = make_mh_model(Eigen::Vector2d(0.5, 0.5), P, Eigen::Vector2d(1.0, 3.0));
    const TruthBundle t = discrete_truth(model, 10, 1000);
    REQUIRE(t.F.size() == 1);
    CHECK(t.F.atoms()[0].location == doctest::Approx(1 - 2 * p).epsilon(1e-14));
    for (Index k = 0; k < 10; ++k)
        CHECK(t.gamma[k] == doctest::Approx(1.0 * std::pow(1 - 2 * p, static_cast<double>(k))));
    check_consistent(t);
}

TEST_CASE("ar1_truth closed forms")
{
    const TruthBundle t = ar1_truth(0.9, 1.0, 50, 64000);
    CHECK(t.gamma[0] == doctest::Approx(1.0 / 0.19));
    CHECK(t.sigma2 == doctest::Approx(100.0));
    CHECK(t.delta0 == doctest::Approx(0.1));
    check_consistent(t);

    const TruthBundle z = ar1_truth(0.0, 2.0, 5, 100);
    CHECK(z.sigma2 == doctest::Approx(4.0));
    REQUIRE(z.F.size() == 1);
    CHECK(z.F.atoms()[0].location == 0.0);
    CHECK(z.F.atoms()[0].weight == doctest::Approx(4.0));

    CHECK(ar1_truth(-0.9, 1.0, 5, 100).sigma2 == doctest::Approx(1.0 / 3.61));
    CHECK_THROWS_AS(ar1_truth(1.0, 1.0, 5, 100), std::invalid_argument);
}

TEST_CASE("gamma_bs closed form against partial sums")
{
    auto partial = [](const DiscreteMeasure& F, Index S) {
        const LagSequence g = materialize(F, S + 1);
        double s = 0.0;
        for (Index k = 1; k <= S; ++k) s += static_cast<double>(k) * g[k];
        return -2.0 * s;
    };
    // tail bound: 2 sum_i w_i sum_{s > S} s |a_i|^s
    auto bound = [](const DiscreteMeasure& F, Index S) {
        double b = 0.0;
        for (const auto& a : F.atoms()) {
            const double q = std::abs(a.location);
            const double Sd = static_cast<double>(S);
            b += 2.0 * a.weight * std::pow(q, Sd + 1) * (Sd + 1 - Sd * q) / ((1 - q) * (1 - q));
        }
        return b;
    };
    for (double rho : {0.9, -0.5, 0.99}) {
        const TruthBundle t = ar1_truth(rho, 1.0, 3, 1000);
        CHECK(std::abs(t.gamma_bs - partial(t.F, 2000)) <= bound(t.F, 2000) + 1e-9 * std::abs(t.gamma_bs));
        const double w = 1.0 / (1 - rho * rho);
        CHECK(t.gamma_bs == doctest::Approx(-2.0 * w * rho / ((1 - rho) * (1 - rho))));
    }
    const TruthBundle d = discrete_truth(build_random_mh(30, 8), 3, 1000);
    CHECK(std::abs(d.gamma_bs - partial(d.F, 2000)) <= bound(d.F, 2000) + 1e-9 * (1 + std::abs(d.gamma_bs)));
}

TEST_CASE("oracle_delta")
{
    CHECK(oracle_delta(DiscreteMeasure{{0.9, 1.0}}) == doctest::Approx(0.1));
    CHECK(oracle_delta(DiscreteMeasure{{-0.645, 1.0}, {0.3, 2.0}}) == doctest::Approx(0.355));
    CHECK(oracle_delta(DiscreteMeasure{{0.0, 1.0}}) == 1.0);
    CHECK_THROWS_AS(oracle_delta(DiscreteMeasure{}), std::invalid_argument);
}

TEST_CASE("optimal_batch_sizes")
{
    const BatchSizes z = optimal_batch_sizes(1.0, 0.0, 1000);
    CHECK(z.bm == 1);
    CHECK(z.obm == 1);
    CHECK(z.bartlett() == z.obm);

    const TruthBundle t = ar1_truth(0.9, 1.0, 2, 64000);
    const double G = t.gamma_bs;
    const double bm = std::cbrt(G * G * 64000 / 100.0);
    const double obm = std::cbrt(8.0 * G * G * 64000 / (3.0 * 100.0));
    CHECK(obm / bm == doctest::Approx(std::cbrt(8.0 / 3.0)));
    CHECK(t.batch.bm == std::lround(bm));
    CHECK(t.batch.obm == std::lround(obm));

    // cube-root law, before rounding
    const BatchSizes big = optimal_batch_sizes(100.0, G, 2 * 640000);
    const BatchSizes small = optimal_batch_sizes(100.0, G, 640000);
    CHECK(static_cast<double>(big.obm) / static_cast<double>(small.obm)
          == doctest::Approx(std::cbrt(2.0)).epsilon(1e-3));

    // clamped to M - 1
    CHECK(optimal_batch_sizes(1e-6, 100.0, 10).obm == 9);
    CHECK_THROWS_AS(optimal_batch_sizes(0.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("eigenvectors are pi-orthonormal")
{
    const auto model = build_random_mh(40, 6);
    const Eigen::VectorXd s = model.pi.cwiseSqrt();
    const Eigen::MatrixXd S = s.asDiagonal() * model.Q * s.cwiseInverse().asDiagonal();
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
    // phi = D^{-1/2} u; <phi_i, phi_j>_pi = u_i . u_j
    const Eigen::MatrixXd phi = s.cwiseInverse().asDiagonal() * es.eigenvectors();
    const Eigen::MatrixXd gram = phi.transpose() * model.pi.asDiagonal() * phi;
    CHECK((gram - Eigen::MatrixXd::Identity(40, 40)).cwiseAbs().maxCoeff() <= 1e-10);
}
