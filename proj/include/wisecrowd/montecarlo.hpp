#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "wisecrowd/model.hpp"
#include "wisecrowd/wisdom.hpp"

namespace wisecrowd {

/// Distribution used to draw synthetic judgments; both match the model's first two moments.
enum class Generator { Gaussian, Uniform };

struct SimulationSpec {
    CrowdModel model;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Generator generator = Generator::Gaussian;
};

struct SimulationResult {
    double empirical_crowd_mse = 0.0;
    double empirical_individual_mse = 0.0;
    std::pair<double, double> standard_errors{0.0, 0.0};  ///< (crowd, individual)
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool degenerate_standard_error = false;  ///< single trial; standard errors are reported as 0
};

/// Trials per independently seeded chunk.
inline constexpr std::size_t kSimulationChunk = 4096;

/**
 * Monte Carlo estimate of the crowd's and the selected individual's expected
 * squared error. Each trial draws one joint realization of the judges'
 * errors X_i - Y, scores the aggregate on it, and scores a judge drawn from
 * `p` on the same realization.
 *
 * Trials are split into chunks seeded from (seed, chunk index) and merged in
 * chunk order, so the result is bit-identical regardless of thread count.
 */
SimulationResult simulate(const SimulationSpec& spec, const WeightVector& w, const SelectionDistribution& p,
                          unsigned threads = 0);

/// Most negative common pairwise correlation an n-judge covariance can have.
double min_common_correlation(std::size_t n);

/**
 * Random valid model for property tests: judge means scatter around the
 * criterion mean with standard deviation bias_scale, and every pairwise judge
 * correlation lies in [correlation_low, correlation_high].
 */
CrowdModel random_model(std::size_t n_judges, std::uint64_t seed, double bias_scale, double correlation_low,
                        double correlation_high, double criterion_var);

}  // namespace wisecrowd
