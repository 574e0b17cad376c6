#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "wisecrowd/montecarlo.hpp"
#include "wisecrowd/schemes.hpp"
#include "wisecrowd/wisdom.hpp"

using namespace wisecrowd;
using testing_support::iid_fixed;
using testing_support::oracle_mse;
using testing_support::vec;

TEST_CASE("WeightVector normalizes and rejects invalid input") {
    const WeightVector w(Eigen::Vector3d(1, 1, 2));
    CHECK(w[2] == doctest::Approx(0.5));
    CHECK(std::abs(w.values().sum() - 1.0) <= 1e-12);
    CHECK_THROWS_AS(WeightVector(Eigen::Vector2d(1, -1)), Error);
    CHECK_THROWS_AS(WeightVector(Eigen::Vector2d(0, 0)), Error);
    CHECK_THROWS_AS(SelectionDistribution(Eigen::VectorXd()), Error);
}

TEST_CASE("crowd_mse examples") {
    // Perfect single predictor.
    CrowdModel perfect{Eigen::VectorXd::Constant(1, 3.0), Eigen::MatrixXd::Ones(1, 1), 3.0, 1.0,
                       Eigen::VectorXd::Ones(1), {"a"}};
    CHECK(crowd_mse(perfect, WeightVector(Eigen::VectorXd::Ones(1))).total == 0.0);

    // Perfect hedge.
    Eigen::MatrixXd hedge(2, 2);
    hedge << 1, -1, -1, 1;
    const auto h = fixed_criterion_model(Eigen::VectorXd::Zero(2), hedge, 0.0);
    CHECK(crowd_mse(h, uniform_weights(2)).total == doctest::Approx(0.0));

    // Common bias 1, unit variance, N = 4: b^2 + s^2/N.
    const auto biased = iid_fixed(4, 1.0, 1.0);
    const auto c = crowd_mse(biased, uniform_weights(4));
    CHECK(c.total == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(c.bias_sq == doctest::Approx(1.0));
    CHECK(c.variance == doctest::Approx(0.25));
    CHECK(c.cross_term == 0.0);
    CHECK(c.criterion_var == 0.0);

    CHECK_THROWS_AS(crowd_mse(biased, uniform_weights(3)), Error);
}

TEST_CASE("individual_mse examples") {
    const auto biased = iid_fixed(4, 1.0, 1.0);
    CHECK(individual_mse(biased, uniform_selection(4)).total == doctest::Approx(2.0));

    // per_judge_mse = (0.5, 1.5): unbiased fixed criterion with those variances.
    Eigen::MatrixXd cov = Eigen::Vector2d(0.5, 1.5).asDiagonal();
    const auto m = fixed_criterion_model(Eigen::VectorXd::Zero(2), cov, 0.0);
    CHECK(individual_mse(m, SelectionDistribution(Eigen::Vector2d(1, 0))).total == doctest::Approx(0.5));

    const auto r = random_model(5, 11, 1.0, -0.2, 0.9, 2.0);
    const auto im = individual_mse(r, uniform_selection(5));
    CHECK(im.total == doctest::Approx(im.per_judge.mean()).epsilon(1e-14));
    CHECK_THROWS_AS(individual_mse(r, uniform_selection(4)), Error);
}

TEST_CASE("evaluate examples") {
    const auto biased = iid_fixed(4, 1.0, 1.0);
    auto r = evaluate(biased, uniform_weights(4), uniform_selection(4));
    CHECK(r.wisdom_gap == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(r.is_wise);

    const auto one = iid_fixed(1, 0.3, 2.0);
    r = evaluate(one, uniform_weights(1), uniform_selection(1));
    CHECK(r.wisdom_gap == 0.0);
    CHECK(r.is_wise);

    const auto two = iid_fixed(2, 0.0, 1.0);
    r = evaluate(two, WeightVector(Eigen::Vector2d(1, 0)), SelectionDistribution(Eigen::Vector2d(0, 1)));
    CHECK(r.crowd_mse == 1.0);
    CHECK(r.individual_mse == 1.0);
    CHECK(r.wisdom_gap == 0.0);
    CHECK(r.is_wise);
}

TEST_CASE("wisdom properties over random models") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const std::size_t n = 1 + seed % 7;
        const double var_y = (seed % 3 == 0) ? 0.0 : 1.5;
        const auto m = random_model(n, seed, 1.0, -1.0, 1.0, var_y);
        const auto per_judge = per_judge_mse(m);

        for (std::size_t i = 0; i < n; ++i) {
            // Vertex consistency is exact by construction.
            CHECK(crowd_mse(m, WeightVector::vertex(n, i)).total == per_judge[static_cast<Eigen::Index>(i)]);
            CHECK(per_judge[static_cast<Eigen::Index>(i)] >= -1e-9);
        }

        const auto w = WeightVector(Eigen::Map<const Eigen::VectorXd>(
            oracle::random_simplex_point(n, rng).data(), static_cast<Eigen::Index>(n)));
        const auto p = SelectionDistribution(Eigen::Map<const Eigen::VectorXd>(
            oracle::random_simplex_point(n, rng).data(), static_cast<Eigen::Index>(n)));
        const auto r = evaluate(m, w, p);

        CHECK(r.crowd_mse == doctest::Approx(oracle_mse(m, vec(w.values()))).epsilon(1e-12));
        CHECK(r.crowd_mse == r.crowd_bias_sq + r.crowd_variance + r.crowd_cross_term + r.criterion_var);
        CHECK(r.crowd_mse >= -1e-9);
        double linear = 0.0;
        for (std::size_t i = 0; i < n; ++i) linear += p[i] * crowd_mse(m, WeightVector::vertex(n, i)).total;
        CHECK(r.individual_mse == doctest::Approx(linear).epsilon(1e-12));
        CHECK(r.is_wise == (r.wisdom_gap >= 0.0));

        // Affine invariance of the verdict.
        for (double a : {-3.0, 0.5, 10.0}) {
            const auto t = evaluate(affine_transform(m, a, 4.0), w, p);
            const double a2 = a * a;
            CHECK(std::abs(t.crowd_mse - a2 * r.crowd_mse) <= 1e-9 * std::max(1.0, a2 * std::abs(r.crowd_mse)));
            CHECK(std::abs(t.individual_mse - a2 * r.individual_mse) <=
                  1e-9 * std::max(1.0, a2 * std::abs(r.individual_mse)));
            CHECK(std::abs(t.wisdom_gap - a2 * r.wisdom_gap) <= 1e-9 * std::max(1.0, a2 * r.individual_mse));
            if (std::abs(r.wisdom_gap) > 1e-9 * std::max(1.0, r.individual_mse)) CHECK(t.is_wise == r.is_wise);
        }
    }
}

TEST_CASE("Galton law and bias robustness") {
    for (std::size_t n : {1u, 2u, 5u, 10u, 100u}) {
        for (double s2 : {0.5, 1.0, 3.0}) {
            const auto m = iid_fixed(n, 0.0, s2);
            const auto r = evaluate(m, uniform_weights(n), uniform_selection(n));
            CHECK(r.crowd_mse == doctest::Approx(s2 / double(n)).epsilon(1e-12));
            CHECK(r.wisdom_gap == doctest::Approx(s2 * (1.0 - 1.0 / double(n))).epsilon(1e-12));
        }
    }
    for (double b : {0.0, 1.0, 10.0, 100.0}) {
        const auto r = evaluate(iid_fixed(4, b, 1.0), uniform_weights(4), uniform_selection(4));
        CHECK(std::abs(r.wisdom_gap - 0.75) <= 1e-9);
    }
}
