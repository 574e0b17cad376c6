#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "wisecrowd/model.hpp"
#include "wisecrowd/wisdom.hpp"

namespace wisecrowd {

/// Predictive validity of each judge: corr(X_i, Y).
struct SkillProfile {
    Eigen::VectorXd skills;
};

struct SkillWeighting {
    WeightVector weights;
    bool skill_degenerate = false;  ///< no judge had positive (clipped) skill; uniform returned
};

struct SkillSelection {
    SelectionDistribution selection;
    bool skill_degenerate = false;
};

struct BestMember {
    SelectionDistribution selection;
    std::size_t index = 0;
    bool tie = false;  ///< another judge shared the minimal error; lowest index won
};

struct InverseMseWeighting {
    WeightVector weights;
    bool zero_error_judges = false;  ///< some judge had zero error; mass split among them
};

/// Result of minimizing the crowd's expected squared error over the simplex.
struct QPSolution {
    WeightVector weights;
    double objective = 0.0;
    std::size_t iterations = 0;
    double kkt_residual = 0.0;
    bool non_unique = false;  ///< objective is flat along some feasible direction
};

/// Thrown when the solver exhausts its iteration budget; carries the best iterate.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& message, QPSolution best)
        : Error(ErrorKind::NoConvergence, message), best_(std::move(best)) {}
    const QPSolution& best() const { return best_; }

private:
    QPSolution best_;
};

WeightVector uniform_weights(std::size_t n);
SelectionDistribution uniform_selection(std::size_t n);

SkillProfile skill_scores(const CrowdModel& model);

/// w_i proportional to max(s_i, 0), or to s_i - min(s, 0) when floor_at_zero is false.
SkillWeighting skill_weights(const CrowdModel& model, bool floor_at_zero = true);
SkillSelection skill_selection(const CrowdModel& model, bool floor_at_zero = true);

/// Skill-proportional map applied to an explicit skill vector.
SkillWeighting weights_from_skills(const Eigen::VectorXd& skills, bool floor_at_zero = true);

/// w_i proportional to 1 / per_judge_mse[i]; usable when the criterion is fixed.
InverseMseWeighting inverse_mse_weights(const CrowdModel& model);

BestMember best_member_selection(const CrowdModel& model);

/// Euclidean projection onto {w >= 0, sum w = 1} by sort and threshold.
WeightVector project_to_simplex(const Eigen::VectorXd& v);

/// Crowd expected squared error for an arbitrary (not necessarily feasible) weight vector.
double crowd_objective(const CrowdModel& model, const Eigen::VectorXd& w);

/// Gradient 2(mu_x'w - mu_y) mu_x + 2 Sigma w - 2 sigma_xy.
Eigen::VectorXd crowd_gradient(const CrowdModel& model, const Eigen::VectorXd& w);

/// Largest spread of the gradient over the support, max_{w_i>0} g_i - min_i g_i.
double kkt_residual(const Eigen::VectorXd& w, const Eigen::VectorXd& gradient);

/**
 * Minimum-error aggregation weights on the simplex.
 *
 * Projected gradient descent with step 1/L, L = 2 (lambda_max(Sigma) + |mu_x|^2),
 * starting from uniform weights. Once the support has been stable for a few
 * steps the iterate is polished by minimizing exactly on the current face; a
 * polished point that leaves the simplex is truncated at the boundary.
 *
 * Stops when kkt_residual <= tolerance * max(1, L/2). Because every vertex is
 * feasible, the optimum is never worse than the best single judge.
 */
QPSolution optimal_weights(const CrowdModel& model, double tolerance = 1e-10, std::size_t max_iterations = 100000);

}  // namespace wisecrowd
