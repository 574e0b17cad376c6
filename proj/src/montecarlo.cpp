#include "wisecrowd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace wisecrowd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Running mean and sum of squared deviations.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.count == 0.0) return;
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }
};

struct ChunkResult {
    Moments crowd;
    Moments individual;
};

// Factor F with F F' = cov, via symmetric eigendecomposition; negative eigenvalues become 0.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal();
}

}  // namespace

SimulationResult simulate(const SimulationSpec& spec, const WeightVector& w, const SelectionDistribution& p,
                          unsigned threads) {
    const CrowdModel& model = spec.model;
    const auto n = static_cast<Eigen::Index>(model.size());
    if (w.size() != model.size() || p.size() != model.size())
        throw Error(ErrorKind::ShapeMismatch, "weights/selection length does not match the model's " +
                                                  std::to_string(n) + " judges");
    if (spec.trials < 1) throw Error(ErrorKind::SampleTooSmall, "simulation needs at least one trial");

    // Error vector e = X - Y 1 has mean mu_x - mu_y and covariance
    // Sigma - sigma 1' - 1 sigma' + var_y 1 1'. Because sum(w) = 1 the crowd error is w'e.
    const Eigen::VectorXd error_mean = model.judge_means.array() - model.criterion_mean;
    Eigen::MatrixXd error_cov = model.judge_cov;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            error_cov(i, j) += -model.cross_cov[i] - model.cross_cov[j] + model.criterion_var;
    const Eigen::MatrixXd factor = psd_factor(error_cov);

    std::vector<double> cumulative(static_cast<std::size_t>(n));
    {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) cumulative[static_cast<std::size_t>(i)] = acc += p.values()[i];
    }

    const std::size_t chunks = (spec.trials + kSimulationChunk - 1) / kSimulationChunk;
    std::vector<ChunkResult> results(chunks);

    auto run_chunk = [&](std::size_t c) {
        std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(c))));
        std::normal_distribution<double> normal(0.0, 1.0);
        const double half_width = std::sqrt(3.0);
        const std::size_t begin = c * kSimulationChunk;
        const std::size_t end = std::min(spec.trials, begin + kSimulationChunk);
        Eigen::VectorXd z(n);
        Eigen::VectorXd e(n);
        ChunkResult out;
        for (std::size_t t = begin; t < end; ++t) {
            for (Eigen::Index i = 0; i < n; ++i)
                z[i] = spec.generator == Generator::Gaussian ? normal(rng)
                                                             : half_width * (2.0 * unit_uniform(rng) - 1.0);
            e.noalias() = factor * z;
            e += error_mean;
            const double crowd_error = w.values().dot(e);
            const double u = unit_uniform(rng) * cumulative.back();
            const auto pick = std::min<std::size_t>(
                static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                         cumulative.begin()),
                static_cast<std::size_t>(n - 1));
            const double judge_error = e[static_cast<Eigen::Index>(pick)];
            out.crowd.add(crowd_error * crowd_error);
            out.individual.add(judge_error * judge_error);
        }
        results[c] = out;
    };

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < workers; ++k)
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    Moments crowd;
    Moments individual;
    for (const auto& r : results) {
        crowd.merge(r.crowd);
        individual.merge(r.individual);
    }

    SimulationResult res;
    res.empirical_crowd_mse = crowd.mean;
    res.empirical_individual_mse = individual.mean;
    res.trials = spec.trials;
    res.seed = spec.seed;
    if (spec.trials < 2) {
        res.degenerate_standard_error = true;
    } else {
        const double t = static_cast<double>(spec.trials);
        res.standard_errors = {std::sqrt(crowd.m2 / (t - 1.0) / t), std::sqrt(individual.m2 / (t - 1.0) / t)};
    }
    return res;
}

double min_common_correlation(std::size_t n) {
    return n <= 1 ? -1.0 : -1.0 / static_cast<double>(n - 1);
}

CrowdModel random_model(std::size_t n_judges, std::uint64_t seed, double bias_scale, double correlation_low,
                        double correlation_high, double criterion_var) {
    if (n_judges == 0) throw Error(ErrorKind::ZeroJudges, "random_model needs at least one judge");
    if (!(criterion_var >= 0.0) || !(bias_scale >= 0.0))
        throw Error(ErrorKind::ValidationFailed, "bias_scale and criterion_var must be nonnegative");
    if (!(correlation_low <= correlation_high) || correlation_low < -1.0 || correlation_high > 1.0)
        throw Error(ErrorKind::InfeasibleCorrelationRange, "correlation range must be an interval inside [-1, 1]");
    const auto n = static_cast<Eigen::Index>(n_judges);
    const double bound = min_common_correlation(n_judges);
    if (n_judges > 1 && correlation_high < bound)
        throw Error(ErrorKind::InfeasibleCorrelationRange,
                    "no valid covariance for " + std::to_string(n_judges) +
                        " judges has all pairwise correlations <= " + std::to_string(correlation_high) +
                        " (minimum common correlation is " + std::to_string(bound) + ")");

    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> normal(0.0, 1.0);

    // Random correlation matrix from a Gaussian factor matrix.
    Eigen::MatrixXd factors(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) factors(i, j) = normal(rng);
    Eigen::MatrixXd random_corr = factors * factors.transpose() + 1e-3 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd inv_sd = random_corr.diagonal().cwiseSqrt().cwiseInverse();
    random_corr = inv_sd.asDiagonal() * random_corr * inv_sd.asDiagonal();

    // Shrink toward an equicorrelation matrix whose level sits inside the requested range.
    const double center =
        std::clamp(0.5 * (correlation_low + correlation_high), std::max(correlation_low, bound), correlation_high);
    double mix = 1.0;
    if (center > -1.0) mix = std::min(mix, (center - correlation_low) / (1.0 + center));
    else mix = 0.0;
    if (center < 1.0) mix = std::min(mix, (correlation_high - center) / (1.0 - center));
    else mix = 0.0;
    mix = std::max(mix, 0.0);
    Eigen::MatrixXd equi = Eigen::MatrixXd::Constant(n, n, center);
    equi.diagonal().setOnes();
    Eigen::MatrixXd corr = (1.0 - mix) * equi + mix * random_corr;
    corr.diagonal().setOnes();

    std::uniform_real_distribution<double> sd_draw(0.5, 2.0);
    Eigen::VectorXd sd(n);
    for (Eigen::Index i = 0; i < n; ++i) sd[i] = sd_draw(rng);

    CrowdModel model;
    model.criterion_mean = normal(rng);
    model.judge_means.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) model.judge_means[i] = model.criterion_mean + bias_scale * normal(rng);
    model.judge_cov = sd.asDiagonal() * corr * sd.asDiagonal();
    model.judge_cov = 0.5 * (model.judge_cov + model.judge_cov.transpose()).eval();
    model.criterion_var = criterion_var;
    model.cross_cov = Eigen::VectorXd::Zero(n);

    if (criterion_var > 0.0) {
        // Criterion correlations rho = R^{1/2} u with |u| < 1 keep the joint matrix PSD.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);
        const Eigen::MatrixXd root = es.eigenvectors() *
                                     es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                                     es.eigenvectors().transpose();
        Eigen::VectorXd u(n);
        for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(rng);
        std::uniform_real_distribution<double> radius(0.0, 0.95);
        u *= radius(rng) / u.norm();
        const Eigen::VectorXd rho = root * u;
        model.cross_cov = std::sqrt(criterion_var) * sd.cwiseProduct(rho);
    }
    model.judge_labels = default_labels(n_judges);
    require_valid(model);
    return model;
}

}  // namespace wisecrowd
