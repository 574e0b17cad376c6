#include "wisecrowd/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "numeric.hpp"

namespace wisecrowd {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::SampleTooSmall: return "SampleTooSmall";
        case ErrorKind::ZeroJudges: return "ZeroJudges";
        case ErrorKind::InvalidDistribution: return "InvalidDistribution";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::UndefinedSkill: return "UndefinedSkill";
        case ErrorKind::ZeroCriterionVariance: return "ZeroCriterionVariance";
        case ErrorKind::JointNotPSD: return "JointNotPSD";
        case ErrorKind::MissingCriterionColumn: return "MissingCriterionColumn";
        case ErrorKind::NonNumericCell: return "NonNumericCell";
        case ErrorKind::DuplicateJudgeLabel: return "DuplicateJudgeLabel";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Io: return "Io";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::InfeasibleCorrelationRange: return "InfeasibleCorrelationRange";
    }
    return "Unknown";
}

Eigen::MatrixXd CrowdModel::joint_cov() const {
    const auto n = judge_means.size();
    Eigen::MatrixXd joint(n + 1, n + 1);
    joint.topLeftCorner(n, n) = judge_cov;
    joint.topRightCorner(n, 1) = cross_cov;
    joint.bottomLeftCorner(1, n) = cross_cov.transpose();
    joint(n, n) = criterion_var;
    return joint;
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("J" + std::to_string(i + 1));
    return labels;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Smallest eigenvalue, and whether it is acceptable relative to the spectrum's scale.
struct PsdCheck {
    double min_eig = 0.0;
    double max_eig = 0.0;
    bool ok = true;
};

PsdCheck check_psd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    PsdCheck c;
    c.min_eig = es.eigenvalues().minCoeff();
    c.max_eig = es.eigenvalues().maxCoeff();
    const double scale = std::max(std::abs(c.max_eig), std::abs(c.min_eig));
    c.ok = c.min_eig >= -kPsdTolerance * scale;
    return c;
}

}  // namespace

std::vector<std::string> validate_model(const CrowdModel& model) {
    std::vector<std::string> violations;
    const auto n = model.judge_means.size();
    if (n < 1) {
        violations.emplace_back("model has no judges (N must be >= 1)");
        return violations;
    }
    if (model.judge_cov.rows() != n || model.judge_cov.cols() != n)
        violations.push_back("judge_cov is " + std::to_string(model.judge_cov.rows()) + "x" +
                             std::to_string(model.judge_cov.cols()) + ", expected " + std::to_string(n) + "x" +
                             std::to_string(n));
    if (model.cross_cov.size() != n)
        violations.push_back("cross_cov has length " + std::to_string(model.cross_cov.size()) + ", expected " +
                             std::to_string(n));
    if (!model.judge_labels.empty() && model.judge_labels.size() != static_cast<std::size_t>(n))
        violations.push_back("judge_labels has " + std::to_string(model.judge_labels.size()) + " entries, expected " +
                             std::to_string(n));
    if (!violations.empty()) return violations;

    const bool finite = model.judge_means.allFinite() && model.judge_cov.allFinite() &&
                        model.cross_cov.allFinite() && std::isfinite(model.criterion_mean) &&
                        std::isfinite(model.criterion_var);
    if (!finite) {
        violations.emplace_back("model contains non-finite values");
        return violations;
    }

    if (model.criterion_var < 0.0)
        violations.push_back("criterion_var = " + fmt(model.criterion_var) + " is a negative variance");

    bool negative_diag = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (model.judge_cov(i, i) < 0.0) {
            negative_diag = true;
            violations.push_back("judge_cov(" + std::to_string(i) + "," + std::to_string(i) + ") = " +
                                 fmt(model.judge_cov(i, i)) + " is a negative variance");
        }
    }

    const double scale = detail::max_abs(model.judge_cov);
    const double asym = (model.judge_cov - model.judge_cov.transpose()).cwiseAbs().maxCoeff();
    const bool symmetric = asym <= kPsdTolerance * scale;
    if (!symmetric) violations.push_back("judge_cov is not symmetric (max asymmetry " + fmt(asym) + ")");

    if (negative_diag || !symmetric) return violations;

    const auto judge = check_psd(model.judge_cov);
    if (!judge.ok) {
        violations.push_back("judge_cov is not positive semidefinite (smallest eigenvalue " + fmt(judge.min_eig) +
                             ", largest " + fmt(judge.max_eig) + ")");
        return violations;
    }
    if (model.criterion_var < 0.0) return violations;

    const auto joint = check_psd(model.joint_cov());
    if (!joint.ok)
        violations.push_back("joint covariance of judges and criterion is not positive semidefinite (smallest "
                             "eigenvalue " + fmt(joint.min_eig) + "); cross_cov is inconsistent");
    return violations;
}

void require_valid(const CrowdModel& model) {
    const auto violations = validate_model(model);
    if (violations.empty()) return;
    std::string msg = "invalid crowd model:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw Error(ErrorKind::ValidationFailed, msg);
}

CrowdModel estimate_model(const JudgmentSample& sample) {
    const auto trials = sample.judgments.rows();
    const auto n = sample.judgments.cols();
    if (sample.criterion.size() != trials)
        throw Error(ErrorKind::ShapeMismatch, "criterion has " + std::to_string(sample.criterion.size()) +
                                                  " values but there are " + std::to_string(trials) + " trials");
    if (trials < 2)
        throw Error(ErrorKind::SampleTooSmall, "need at least 2 trials, got " + std::to_string(trials));
    if (n < 1) throw Error(ErrorKind::ZeroJudges, "sample has no judge columns");
    if (!sample.judge_labels.empty() && sample.judge_labels.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::ShapeMismatch, "label count does not match judge columns");

    // Joint data matrix with the criterion as the last column.
    Eigen::MatrixXd data(trials, n + 1);
    data.leftCols(n) = sample.judgments;
    data.col(n) = sample.criterion;

    Eigen::VectorXd means(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        detail::CompensatedSum s;
        for (Eigen::Index t = 0; t < trials; ++t) s.add(data(t, j));
        means[j] = s.value() / static_cast<double>(trials);
    }
    const Eigen::MatrixXd centered = data.rowwise() - means.transpose();

    Eigen::MatrixXd cov(n + 1, n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        for (Eigen::Index j = i; j <= n; ++j) {
            detail::CompensatedSum s;
            for (Eigen::Index t = 0; t < trials; ++t) s.add(centered(t, i) * centered(t, j));
            cov(i, j) = cov(j, i) = s.value() / static_cast<double>(trials - 1);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double max_eig = es.eigenvalues().maxCoeff();
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < 0.0 && min_eig >= -kPsdTolerance * std::abs(max_eig)) {
        const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
        cov = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
    }

    CrowdModel model;
    model.judge_means = means.head(n);
    model.criterion_mean = means[n];
    model.judge_cov = cov.topLeftCorner(n, n);
    model.cross_cov = cov.topRightCorner(n, 1);
    model.criterion_var = std::max(cov(n, n), 0.0);
    model.judge_labels = sample.judge_labels.empty() ? default_labels(static_cast<std::size_t>(n))
                                                     : sample.judge_labels;
    return model;
}

CrowdModel fixed_criterion_model(const Eigen::VectorXd& judge_means, const Eigen::MatrixXd& judge_cov,
                                 double true_value, std::vector<std::string> labels) {
    CrowdModel model;
    model.judge_means = judge_means;
    model.judge_cov = judge_cov;
    model.criterion_mean = true_value;
    model.criterion_var = 0.0;
    model.cross_cov = Eigen::VectorXd::Zero(judge_means.size());
    model.judge_labels = labels.empty() ? default_labels(static_cast<std::size_t>(judge_means.size()))
                                        : std::move(labels);
    require_valid(model);
    return model;
}

CrowdModel affine_transform(const CrowdModel& model, double scale, double shift) {
    CrowdModel out = model;
    out.judge_means = (scale * model.judge_means).array() + shift;
    out.criterion_mean = scale * model.criterion_mean + shift;
    const double s2 = scale * scale;
    out.judge_cov = s2 * model.judge_cov;
    out.cross_cov = s2 * model.cross_cov;
    out.criterion_var = s2 * model.criterion_var;
    return out;
}

}  // namespace wisecrowd
