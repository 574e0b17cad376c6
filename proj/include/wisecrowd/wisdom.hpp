#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "wisecrowd/model.hpp"

namespace wisecrowd {

namespace detail {
Eigen::VectorXd normalize_simplex(const Eigen::VectorXd& v, const char* what);
}

/// Aggregation weights: nonnegative, summing to one. Normalized on construction.
class WeightVector {
public:
    explicit WeightVector(const Eigen::VectorXd& weights) : w_(detail::normalize_simplex(weights, "weights")) {}

    /// Point mass on judge `index` of an n-judge crowd.
    static WeightVector vertex(std::size_t n, std::size_t index);

    const Eigen::VectorXd& values() const { return w_; }
    std::size_t size() const { return static_cast<std::size_t>(w_.size()); }
    double operator[](std::size_t i) const { return w_[static_cast<Eigen::Index>(i)]; }

private:
    Eigen::VectorXd w_;
};

/// Probabilities of selecting each judge as "the individual".
class SelectionDistribution {
public:
    explicit SelectionDistribution(const Eigen::VectorXd& probs)
        : p_(detail::normalize_simplex(probs, "selection probabilities")) {}

    static SelectionDistribution point_mass(std::size_t n, std::size_t index);

    const Eigen::VectorXd& values() const { return p_; }
    std::size_t size() const { return static_cast<std::size_t>(p_.size()); }
    double operator[](std::size_t i) const { return p_[static_cast<Eigen::Index>(i)]; }

private:
    Eigen::VectorXd p_;
};

/// Expected squared error of the aggregate, split into its four addends.
struct CrowdMse {
    double total = 0.0;
    double bias_sq = 0.0;        ///< (mu_x'w - mu_y)^2
    double variance = 0.0;       ///< w' Sigma w
    double cross_term = 0.0;     ///< -2 w' sigma_xy
    double criterion_var = 0.0;  ///< sigma_y^2
};

struct IndividualMse {
    double total = 0.0;
    Eigen::VectorXd per_judge;  ///< expected squared error of each judge alone
};

/// Both sides of the crowd-versus-individual comparison and the verdict.
struct WisdomReport {
    double crowd_mse = 0.0;
    double individual_mse = 0.0;
    double wisdom_gap = 0.0;  ///< individual_mse - crowd_mse
    bool is_wise = false;     ///< gap >= 0; ties count as wise
    double crowd_bias_sq = 0.0;
    double crowd_variance = 0.0;
    double crowd_cross_term = 0.0;
    double criterion_var = 0.0;
    Eigen::VectorXd per_judge_mse;
};

CrowdMse crowd_mse(const CrowdModel& model, const WeightVector& w);

/// Per-judge expected squared errors (mu_i - mu_y)^2 + var_i - 2 cov_iy + var_y.
Eigen::VectorXd per_judge_mse(const CrowdModel& model);

IndividualMse individual_mse(const CrowdModel& model, const SelectionDistribution& p);

WisdomReport evaluate(const CrowdModel& model, const WeightVector& w, const SelectionDistribution& p);

}  // namespace wisecrowd
