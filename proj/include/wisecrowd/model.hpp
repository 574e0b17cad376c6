#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wisecrowd/error.hpp"

namespace wisecrowd {

/// Relative tolerance shared by the symmetry and positive-semidefinite checks.
inline constexpr double kPsdTolerance = 1e-9;

/**
 * Second-moment description of a crowd of judges and the criterion they
 * predict. Only first and second moments are stored; nothing here assumes
 * a distributional shape.
 *
 * A fixed (non-random) criterion is the special case criterion_var == 0,
 * which forces cross_cov to vanish.
 */
struct CrowdModel {
    Eigen::VectorXd judge_means;     ///< mean prediction of each judge
    Eigen::MatrixXd judge_cov;       ///< covariance between judges' predictions
    double criterion_mean = 0.0;
    double criterion_var = 0.0;
    Eigen::VectorXd cross_cov;       ///< covariance of each judge with the criterion
    std::vector<std::string> judge_labels;

    std::size_t size() const { return static_cast<std::size_t>(judge_means.size()); }

    /// (N+1)x(N+1) covariance of (X_1..X_N, Y).
    Eigen::MatrixXd joint_cov() const;
};

/// Raw trials-by-judges data with the realized criterion for each trial.
struct JudgmentSample {
    Eigen::MatrixXd judgments;  ///< rows are trials, columns are judges
    Eigen::VectorXd criterion;
    std::vector<std::string> judge_labels;
};

/// Default labels "J1".."Jn".
std::vector<std::string> default_labels(std::size_t n);

/**
 * Returns every invariant violation of the model, one human-readable line
 * each. An empty result certifies the model for the rest of the library.
 */
std::vector<std::string> validate_model(const CrowdModel& model);

/// Throws Error(ValidationFailed) listing all violations if the model is invalid.
void require_valid(const CrowdModel& model);

/**
 * Plug-in moments from a sample: arithmetic means and unbiased (T-1)
 * covariances. Rounding-level negative eigenvalues of the joint covariance
 * are clamped to zero.
 */
CrowdModel estimate_model(const JudgmentSample& sample);

/// Model of judges estimating a fixed quantity: criterion_var = 0, cross_cov = 0.
CrowdModel fixed_criterion_model(const Eigen::VectorXd& judge_means, const Eigen::MatrixXd& judge_cov,
                                 double true_value, std::vector<std::string> labels = {});

/// Applies v -> scale * v + shift to every judgment and the criterion.
CrowdModel affine_transform(const CrowdModel& model, double scale, double shift);

}  // namespace wisecrowd
