#include "wisecrowd/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wisecrowd {

SelectionRule parse_selection_rule(const std::string& name) {
    if (name == "uniform") return SelectionRule::Uniform;
    if (name == "skill") return SelectionRule::Skill;
    if (name == "best") return SelectionRule::Best;
    throw Error(ErrorKind::ParseError, "unknown selection rule '" + name + "'");
}

std::string_view to_string(SelectionRule rule) {
    switch (rule) {
        case SelectionRule::Uniform: return "uniform";
        case SelectionRule::Skill: return "skill";
        case SelectionRule::Best: return "best";
    }
    return "uniform";
}

SelectionDistribution derive_selection(const CrowdModel& model, SelectionRule rule) {
    switch (rule) {
        case SelectionRule::Skill: return skill_selection(model).selection;
        case SelectionRule::Best: return best_member_selection(model).selection;
        case SelectionRule::Uniform: break;
    }
    return uniform_selection(model.size());
}

CrowdModel extend_model(const CrowdModel& model, const CandidateMember& candidate) {
    const auto n = static_cast<Eigen::Index>(model.size());
    if (candidate.cov_with_members.size() != n)
        throw Error(ErrorKind::ShapeMismatch, "candidate '" + candidate.label + "' has " +
                                                  std::to_string(candidate.cov_with_members.size()) +
                                                  " covariances for " + std::to_string(n) + " judges");
    CrowdModel out;
    out.judge_means.resize(n + 1);
    out.judge_means << model.judge_means, candidate.mean;
    out.judge_cov.resize(n + 1, n + 1);
    out.judge_cov.topLeftCorner(n, n) = model.judge_cov;
    out.judge_cov.topRightCorner(n, 1) = candidate.cov_with_members;
    out.judge_cov.bottomLeftCorner(1, n) = candidate.cov_with_members.transpose();
    out.judge_cov(n, n) = candidate.variance;
    out.cross_cov.resize(n + 1);
    out.cross_cov << model.cross_cov, candidate.cov_with_criterion;
    out.criterion_mean = model.criterion_mean;
    out.criterion_var = model.criterion_var;
    out.judge_labels = model.judge_labels.empty() ? default_labels(model.size()) : model.judge_labels;
    out.judge_labels.push_back(candidate.label.empty() ? "candidate" : candidate.label);

    const auto violations = validate_model(out);
    if (!violations.empty()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.joint_cov(), Eigen::EigenvaluesOnly);
        std::ostringstream msg;
        msg << "adding candidate '" << candidate.label << "' breaks the model (smallest joint eigenvalue "
            << es.eigenvalues().minCoeff() << ")";
        for (const auto& v : violations) msg << "\n  - " << v;
        throw Error(ErrorKind::JointNotPSD, msg.str());
    }
    return out;
}

CandidateEvaluation evaluate_candidate(const CrowdModel& model, const CandidateMember& candidate,
                                       SelectionRule rule) {
    require_valid(model);
    const CrowdModel extended = extend_model(model, candidate);
    const auto before_opt = optimal_weights(model);
    const auto after_opt = optimal_weights(extended);

    CandidateEvaluation e{
        candidate.label,
        0,
        evaluate(model, before_opt.weights, derive_selection(model, rule)),
        evaluate(extended, after_opt.weights, derive_selection(extended, rule)),
        before_opt.weights,
        after_opt.weights,
        0.0,
        0.0,
        std::nullopt,
        0.0,
        0.0,
        0.0,
    };
    e.marginal_gain = e.before.crowd_mse - e.after.crowd_mse;
    e.candidate_weight = after_opt.weights[model.size()];
    if (extended.criterion_var > 0.0 && candidate.variance > 0.0)
        e.candidate_skill = candidate.cov_with_criterion / std::sqrt(candidate.variance * extended.criterion_var);

    e.uniform_before_mse = crowd_mse(model, uniform_weights(model.size())).total;
    e.uniform_after_mse = crowd_mse(extended, uniform_weights(extended.size())).total;
    e.uniform_marginal_gain = e.uniform_before_mse - e.uniform_after_mse;
    return e;
}

CandidateRanking rank_candidates(const CrowdModel& model, const std::vector<CandidateMember>& candidates,
                                 SelectionRule rule) {
    CandidateRanking out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        try {
            auto e = evaluate_candidate(model, candidates[i], rule);
            e.input_index = i;
            out.ranked.push_back(std::move(e));
        } catch (const Error& err) {
            out.failures.push_back({candidates[i].label, i, err.kind(), err.what()});
        }
    }
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [](const CandidateEvaluation& a, const CandidateEvaluation& b) {
                         return a.marginal_gain > b.marginal_gain;
                     });
    return out;
}

}  // namespace wisecrowd
