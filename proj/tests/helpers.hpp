#pragma once

#include <vector>

#include "oracles.hpp"
#include "wisecrowd/model.hpp"

namespace testing_support {

inline std::vector<double> vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline std::vector<std::vector<double>> mat(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
    return out;
}

/// Longhand oracle objective for a model.
inline double oracle_mse(const wisecrowd::CrowdModel& m, const std::vector<double>& w) {
    return oracle::crowd_mse(vec(m.judge_means), mat(m.judge_cov), m.criterion_mean, m.criterion_var,
                             vec(m.cross_cov), w);
}

/// N judges with common bias b and variance s2, independent, fixed criterion at 0.
inline wisecrowd::CrowdModel iid_fixed(std::size_t n, double bias, double s2) {
    const auto k = static_cast<Eigen::Index>(n);
    return wisecrowd::fixed_criterion_model(Eigen::VectorXd::Constant(k, bias),
                                            s2 * Eigen::MatrixXd::Identity(k, k), 0.0);
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0}) + abs_floor;
}

}  // namespace testing_support
