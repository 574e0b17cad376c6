#include "wisecrowd/wisdom.hpp"

#include <cmath>
#include <string>

#include "numeric.hpp"

namespace wisecrowd {

Eigen::VectorXd detail::normalize_simplex(const Eigen::VectorXd& v, const char* what) {
    if (v.size() == 0) throw Error(ErrorKind::ZeroJudges, std::string(what) + " are empty");
    CompensatedSum s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0)
            throw Error(ErrorKind::InvalidDistribution,
                        std::string(what) + " entry " + std::to_string(i) + " is negative or not finite");
        s.add(v[i]);
    }
    const double total = s.value();
    if (!(total > 0.0)) throw Error(ErrorKind::InvalidDistribution, std::string(what) + " sum to zero");
    if (total == 1.0) return v;
    return v / total;
}

WeightVector WeightVector::vertex(std::size_t n, std::size_t index) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(index)] = 1.0;
    return WeightVector(e);
}

SelectionDistribution SelectionDistribution::point_mass(std::size_t n, std::size_t index) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(index)] = 1.0;
    return SelectionDistribution(e);
}

namespace {

void check_length(const CrowdModel& model, std::size_t len, const char* what) {
    if (len != model.size())
        throw Error(ErrorKind::ShapeMismatch, std::string(what) + " has length " + std::to_string(len) +
                                                  " but the model has " + std::to_string(model.size()) + " judges");
}

}  // namespace

CrowdMse crowd_mse(const CrowdModel& model, const WeightVector& w) {
    check_length(model, w.size(), "weight vector");
    const double bias = detail::dot(model.judge_means, w.values()) - model.criterion_mean;
    CrowdMse out;
    out.bias_sq = bias * bias;
    out.variance = detail::quadratic_form(model.judge_cov, w.values());
    out.cross_term = -2.0 * detail::dot(w.values(), model.cross_cov);
    out.criterion_var = model.criterion_var;
    out.total = out.bias_sq + out.variance + out.cross_term + out.criterion_var;
    return out;
}

Eigen::VectorXd per_judge_mse(const CrowdModel& model) {
    const auto n = model.judge_means.size();
    Eigen::VectorXd mse(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Same addend order as crowd_mse so a vertex weight reproduces this bit for bit.
        const double bias = model.judge_means[i] - model.criterion_mean;
        mse[i] = bias * bias + model.judge_cov(i, i) + -2.0 * model.cross_cov[i] + model.criterion_var;
    }
    return mse;
}

IndividualMse individual_mse(const CrowdModel& model, const SelectionDistribution& p) {
    check_length(model, p.size(), "selection distribution");
    IndividualMse out;
    out.per_judge = per_judge_mse(model);
    out.total = detail::dot(p.values(), out.per_judge);
    return out;
}

WisdomReport evaluate(const CrowdModel& model, const WeightVector& w, const SelectionDistribution& p) {
    const auto crowd = crowd_mse(model, w);
    auto indiv = individual_mse(model, p);
    WisdomReport r;
    r.crowd_mse = crowd.total;
    r.individual_mse = indiv.total;
    r.wisdom_gap = indiv.total - crowd.total;
    r.is_wise = r.wisdom_gap >= 0.0;
    r.crowd_bias_sq = crowd.bias_sq;
    r.crowd_variance = crowd.variance;
    r.crowd_cross_term = crowd.cross_term;
    r.criterion_var = crowd.criterion_var;
    r.per_judge_mse = std::move(indiv.per_judge);
    return r;
}

}  // namespace wisecrowd
