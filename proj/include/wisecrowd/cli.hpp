#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wisecrowd/montecarlo.hpp"

namespace wisecrowd::cli {

inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericalError = 3 };

enum class Command { Analyze, Optimize, Candidate, Simulate, Sweep };
enum class Format { Human, Machine };

/// Grid for the `sweep` command.
struct SweepGrid {
    std::vector<double> bias_scale{0.0, 0.5, 1.0, 2.0};
    std::vector<double> correlation{-0.4, -0.2, 0.0, 0.2, 0.4, 0.8};
    std::vector<std::size_t> n_judges{2, 5, 10, 25};
};

struct AnalysisRequest {
    Command command = Command::Analyze;
    std::optional<std::filesystem::path> data_csv;
    std::optional<std::filesystem::path> model_file;
    std::optional<std::filesystem::path> candidates_csv;
    std::optional<std::filesystem::path> save_model;
    std::optional<std::filesystem::path> sweep_grid;
    std::string weights = "uniform";    ///< uniform | skill | inverse-mse | optimal | path to a weights file
    std::string selection = "uniform";  ///< uniform | skill | best | path to a probabilities file
    Format format = Format::Human;
    std::size_t trials = 100000;
    std::uint64_t seed = 0;
    Generator generator = Generator::Gaussian;
};

/// Reads a sweep grid JSON document with optional keys bias_scale, correlation, n_judges.
SweepGrid load_sweep_grid(const std::filesystem::path& path);

/// Executes one request; the report goes to `out`, diagnostics to `err`. Returns the exit code.
int run(const AnalysisRequest& request, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors return kUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wisecrowd::cli
