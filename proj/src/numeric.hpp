#pragma once

#include <cmath>
#include <span>

#include <Eigen/Dense>

namespace wisecrowd::detail {

// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

inline double quadratic_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) {
    CompensatedSum s;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (v[j] == 0.0) continue;
        for (Eigen::Index i = 0; i < m.rows(); ++i) s.add(v[i] * m(i, j) * v[j]);
    }
    return s.value();
}

inline double max_abs(const Eigen::MatrixXd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace wisecrowd::detail
