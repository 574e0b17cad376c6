#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wisecrowd/diversity.hpp"
#include "wisecrowd/model.hpp"

namespace wisecrowd::io {

inline constexpr int kModelSchemaVersion = 1;

/// Parses trials-by-judges CSV text. The column named exactly `criterion` holds the realized criterion.
JudgmentSample parse_judgment_csv(std::string_view text);
JudgmentSample ingest_csv(const std::filesystem::path& path);

/// JSON model document: schema_version, judge_labels, judge_means, judge_cov (row-major), criterion_mean,
/// criterion_var, cross_cov.
std::string model_to_string(const CrowdModel& model);
CrowdModel model_from_string(std::string_view text);
void save_model(const CrowdModel& model, const std::filesystem::path& path);
CrowdModel load_model(const std::filesystem::path& path);

/// Candidate CSV: label,mean,variance,cov_with_criterion followed by one column per existing judge label.
std::vector<CandidateMember> parse_candidates_csv(std::string_view text, const std::vector<std::string>& judge_labels);
std::vector<CandidateMember> read_candidates(const std::filesystem::path& path,
                                             const std::vector<std::string>& judge_labels);

/// Numbers separated by commas, whitespace or newlines (explicit weight / selection files).
Eigen::VectorXd read_vector(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace wisecrowd::io
