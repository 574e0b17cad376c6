#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wisecrowd/model.hpp"
#include "wisecrowd/schemes.hpp"
#include "wisecrowd/wisdom.hpp"

namespace wisecrowd {

/// Second moments of a prospective judge relative to an existing crowd.
struct CandidateMember {
    std::string label;
    double mean = 0.0;
    double variance = 0.0;
    Eigen::VectorXd cov_with_members;
    double cov_with_criterion = 0.0;
};

enum class SelectionRule { Uniform, Skill, Best };

SelectionRule parse_selection_rule(const std::string& name);
std::string_view to_string(SelectionRule rule);

/// Builds the selection distribution for `rule` on `model`.
SelectionDistribution derive_selection(const CrowdModel& model, SelectionRule rule);

struct CandidateEvaluation {
    std::string label;
    std::size_t input_index = 0;
    WisdomReport before;  ///< optimal weights on the existing crowd
    WisdomReport after;   ///< optimal weights with the candidate added
    WeightVector before_weights;
    WeightVector after_weights;
    double marginal_gain = 0.0;    ///< before.crowd_mse - after.crowd_mse
    double candidate_weight = 0.0;  ///< candidate's share of the new optimum
    std::optional<double> candidate_skill;
    /// Same comparison with simple averaging; may be negative.
    double uniform_before_mse = 0.0;
    double uniform_after_mse = 0.0;
    double uniform_marginal_gain = 0.0;
};

struct CandidateFailure {
    std::string label;
    std::size_t input_index = 0;
    ErrorKind kind{};
    std::string message;
};

struct CandidateRanking {
    std::vector<CandidateEvaluation> ranked;  ///< by marginal_gain descending, input order on ties
    std::vector<CandidateFailure> failures;
};

/// Appends the candidate as judge N+1. Throws JointNotPSD if the result is not a valid model.
CrowdModel extend_model(const CrowdModel& model, const CandidateMember& candidate);

CandidateEvaluation evaluate_candidate(const CrowdModel& model, const CandidateMember& candidate,
                                       SelectionRule rule = SelectionRule::Uniform);

CandidateRanking rank_candidates(const CrowdModel& model, const std::vector<CandidateMember>& candidates,
                                 SelectionRule rule = SelectionRule::Uniform);

}  // namespace wisecrowd
