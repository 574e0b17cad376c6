// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "wisecrowd/cli.hpp"
#include "wisecrowd/diversity.hpp"
#include "wisecrowd/montecarlo.hpp"
#include "wisecrowd/schemes.hpp"
#include "wisecrowd/wisdom.hpp"

using namespace wisecrowd;
using testing_support::iid_fixed;
using testing_support::oracle_mse;
using testing_support::vec;

namespace {

const std::string kFx = WISECROWD_FIXTURES;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// Deterministic corpus of random valid models with N in [1, max_n].
CrowdModel corpus_model(std::uint64_t index, std::size_t min_n, std::size_t max_n, std::uint64_t salt) {
    std::mt19937_64 rng(salt * 1000003ULL + index);
    const std::size_t n = min_n + rng() % (max_n - min_n + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double bias = 2.0 * u(rng);
    const double bound = min_common_correlation(n);
    double lo = -1.0 + 2.0 * u(rng);
    double hi = -1.0 + 2.0 * u(rng);
    if (lo > hi) std::swap(lo, hi);
    if (hi < bound) hi = std::min(1.0, bound + 0.5 * u(rng));
    const double var_y = (rng() % 4 == 0) ? 0.0 : 0.25 + 2.0 * u(rng);
    return random_model(n, rng(), bias, lo, hi, var_y);
}

SelectionDistribution random_selection(std::size_t n, std::mt19937_64& rng) {
    const auto p = oracle::random_simplex_point(n, rng);
    return SelectionDistribution(Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(n)));
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

Outcome vertex_consistency() {
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto m = corpus_model(k, 1, 8, 1);
        const auto per_judge = per_judge_mse(m);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double a = crowd_mse(m, WeightVector::vertex(m.size(), i)).total;
            const double b = per_judge[static_cast<Eigen::Index>(i)];
            // Independent check of the bracket itself.
            const double longhand = oracle_mse(m, vec(WeightVector::vertex(m.size(), i).values()));
            const double rel = std::abs(a - b) / std::max(1.0, std::abs(b));
            worst = std::max(worst, rel);
            if (rel > 1e-12) o.fail("model " + std::to_string(k) + " judge " + std::to_string(i));
            if (std::abs(b - longhand) > 1e-12 * std::max(1.0, std::abs(b)))
                o.fail("per-judge bracket disagrees with longhand oracle, model " + std::to_string(k));
        }
    }
    if (o.pass) o.detail = "200 models, worst relative difference " + fmt(worst);
    return o;
}

Outcome galton_law() {
    Outcome o;
    for (std::size_t n : {1u, 2u, 5u, 10u, 100u}) {
        const auto m = iid_fixed(n, 0.0, 1.0);
        const auto r = evaluate(m, uniform_weights(n), uniform_selection(n));
        const double expect_mse = 1.0 / double(n);
        const double expect_gap = 1.0 - 1.0 / double(n);
        if (std::abs(r.crowd_mse - expect_mse) > 1e-12) o.fail("crowd MSE for N=" + std::to_string(n));
        if (std::abs(r.wisdom_gap - expect_gap) > 1e-12) o.fail("wisdom gap for N=" + std::to_string(n));
    }
    if (o.pass) o.detail = "crowd MSE = 1/N and gap = 1 - 1/N for N in {1,2,5,10,100}";
    return o;
}

Outcome bias_robustness() {
    Outcome o;
    for (double b : {0.0, 1.0, 10.0, 100.0}) {
        const auto r = evaluate(iid_fixed(4, b, 1.0), uniform_weights(4), uniform_selection(4));
        if (std::abs(r.wisdom_gap - 0.75) > 1e-9) o.fail("gap " + fmt(r.wisdom_gap) + " at b=" + fmt(b));
    }
    if (o.pass) o.detail = "gap 0.75 for b in {0,1,10,100}";
    return o;
}

Outcome hedging() {
    Outcome o;
    for (double rho : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        Eigen::MatrixXd cov(2, 2);
        cov << 1, rho, rho, 1;
        const auto m = fixed_criterion_model(Eigen::VectorXd::Zero(2), cov, 0.0);
        const double mse = crowd_mse(m, uniform_weights(2)).total;
        if (std::abs(mse - (1.0 + rho) / 2.0) > 1e-12) o.fail("uniform MSE at rho=" + fmt(rho));
        if (rho == -1.0) {
            const auto qp = optimal_weights(m);
            if (std::abs(qp.objective) > 1e-12) o.fail("optimal objective " + fmt(qp.objective) + " at rho=-1");
        }
    }
    if (o.pass) o.detail = "uniform MSE = (1+rho)/2; optimal objective 0 at rho=-1";
    return o;
}

Outcome always_wise() {
    Outcome o;
    double worst = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(5);
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto m = corpus_model(k, 1, 8, 5);
        const auto qp = optimal_weights(m);
        std::vector<SelectionDistribution> rules{uniform_selection(m.size()), best_member_selection(m).selection};
        for (int j = 0; j < 10; ++j) rules.push_back(random_selection(m.size(), rng));
        for (const auto& p : rules) {
            const auto r = evaluate(m, qp.weights, p);
            worst = std::min(worst, r.wisdom_gap);
            if (r.wisdom_gap < -1e-9) o.fail("model " + std::to_string(k) + " slack " + fmt(r.wisdom_gap));
        }
    }
    if (o.pass) o.detail = "1000 models x 12 selections, minimum slack " + fmt(worst);
    return o;
}

Outcome qp_oracle() {
    Outcome o;
    double worst_gap = 0.0, worst_kkt = 0.0, worst_fd = 0.0;
    std::mt19937_64 rng(6);
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto m = corpus_model(k, 2, 3, 6);
        const std::size_t n = m.size();
        const auto qp = optimal_weights(m);

        // Longhand objective on fixed-size arrays for the lattice sweep.
        std::array<double, 3> mu{}, cross{};
        std::array<std::array<double, 3>, 3> cov{};
        for (std::size_t i = 0; i < n; ++i) {
            mu[i] = m.judge_means[static_cast<Eigen::Index>(i)];
            cross[i] = m.cross_cov[static_cast<Eigen::Index>(i)];
            for (std::size_t j = 0; j < n; ++j)
                cov[i][j] = m.judge_cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        auto f = [&](const std::vector<double>& w) {
            double mean = -m.criterion_mean, var = m.criterion_var;
            for (std::size_t i = 0; i < n; ++i) {
                mean += w[i] * mu[i];
                var -= 2.0 * w[i] * cross[i];
                for (std::size_t j = 0; j < n; ++j) var += w[i] * w[j] * cov[i][j];
            }
            return mean * mean + var;
        };
        const auto grid = oracle::simplex_grid_min(n, 1e-4, f);
        const double gap = std::abs(grid.value - qp.objective);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6) o.fail("objective differs from grid by " + fmt(gap) + " on model " + std::to_string(k));
        worst_kkt = std::max(worst_kkt, qp.kkt_residual);
        if (qp.kkt_residual > 1e-8) o.fail("KKT residual " + fmt(qp.kkt_residual));

        const auto w0 = oracle::random_simplex_point(n, rng);
        const auto fd = oracle::fd_gradient(f, w0, 1e-6);
        const Eigen::VectorXd g =
            crowd_gradient(m, Eigen::Map<const Eigen::VectorXd>(w0.data(), static_cast<Eigen::Index>(n)));
        for (std::size_t i = 0; i < n; ++i) {
            const double rel = std::abs(g[static_cast<Eigen::Index>(i)] - fd[i]) / std::max(1.0, std::abs(fd[i]));
            worst_fd = std::max(worst_fd, rel);
            if (rel > 1e-5) o.fail("gradient mismatch " + fmt(rel));
        }
    }
    if (o.pass)
        o.detail = "100 models, max |grid - solver| " + fmt(worst_gap) + ", max KKT " + fmt(worst_kkt) +
                   ", max FD rel " + fmt(worst_fd);
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    double worst_z = 0.0;
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto m = corpus_model(k, 1, 8, 7);
        const auto p = uniform_selection(m.size());
        for (const auto& w : {uniform_weights(m.size()), optimal_weights(m).weights}) {
            const auto analytic = evaluate(m, w, p);
            const auto sim = simulate({m, 100000, 1000 + k}, w, p);
            const double zc = std::abs(sim.empirical_crowd_mse - analytic.crowd_mse);
            const double zi = std::abs(sim.empirical_individual_mse - analytic.individual_mse);
            if (zc > 4 * sim.standard_errors.first || zi > 4 * sim.standard_errors.second)
                o.fail("model " + std::to_string(k) + " outside 4 standard errors");
            if (sim.standard_errors.first > 0) worst_z = std::max(worst_z, zc / sim.standard_errors.first);
            if (sim.standard_errors.second > 0) worst_z = std::max(worst_z, zi / sim.standard_errors.second);
        }
    }
    // Byte-identical repeat runs, library and CLI.
    const auto m = corpus_model(3, 4, 4, 7);
    const auto w = optimal_weights(m).weights;
    const auto p = uniform_selection(4);
    const auto a = simulate({m, 100000, 77}, w, p);
    const auto b = simulate({m, 100000, 77}, w, p);
    if (std::memcmp(&a.empirical_crowd_mse, &b.empirical_crowd_mse, sizeof(double)) != 0 ||
        std::memcmp(&a.empirical_individual_mse, &b.empirical_individual_mse, sizeof(double)) != 0)
        o.fail("fixed-seed simulations differ");
    auto cli_run = [] {
        const char* argv[] = {"wisecrowd", "simulate", "--data", nullptr, "--seed", "9", "--trials", "50000",
                              "--format", "machine"};
        const std::string data = kFx + "/two_judges.csv";
        argv[3] = data.c_str();
        std::ostringstream out, err;
        cli::main_entry(10, argv, out, err);
        return out.str();
    };
    if (cli_run() != cli_run()) o.fail("fixed-seed CLI reports differ");
    if (o.pass) o.detail = "50 models x {uniform, optimal}, max |z| " + fmt(worst_z) + "; repeat runs identical";
    return o;
}

Outcome diversity_fixture() {
    Outcome o;
    const auto crowd = iid_fixed(1, 0.0, 1.0);
    const CandidateMember hedge{"hedge", 0.0, 1.0, Eigen::VectorXd::Constant(1, -1.0), 0.0};
    const CandidateMember lowvar{"lowvar", 0.0, 0.25, Eigen::VectorXd::Zero(1), 0.0};
    const auto ranking = rank_candidates(crowd, {lowvar, hedge});
    if (ranking.ranked.size() != 2) {
        o.fail("expected two ranked candidates");
        return o;
    }
    const auto& first = ranking.ranked[0];
    const auto& second = ranking.ranked[1];
    if (first.label != "hedge") o.fail("hedge does not rank first");
    if (std::abs(first.after.crowd_mse) > 1e-9) o.fail("hedge after-MSE " + fmt(first.after.crowd_mse));
    if (std::abs(second.after.crowd_mse - 0.2) > 1e-9) o.fail("low-variance after-MSE " + fmt(second.after.crowd_mse));
    if (o.pass) o.detail = "hedge after-MSE 0 ranks above low-variance after-MSE 0.2";
    return o;
}

Outcome cli_round_trip() {
    Outcome o;
    auto run = [](std::vector<std::string> args) {
        std::vector<const char*> argv{"wisecrowd"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_pair(code, out.str());
    };
    const auto [code, out] = run({"analyze", "--data", kFx + "/two_judges.csv", "--format", "machine"});
    if (code != 0) {
        o.fail("analyze exit " + std::to_string(code));
        return o;
    }
    const auto rep = nlohmann::json::parse(out)["report"];
    if (std::abs(rep["crowd_mse"].get<double>() - 0.5) > 1e-9) o.fail("crowd_mse");
    if (std::abs(rep["individual_mse"].get<double>() - 0.75) > 1e-9) o.fail("individual_mse");
    if (std::abs(rep["wisdom_gap"].get<double>() - 0.25) > 1e-9) o.fail("wisdom_gap");
    if (!rep["is_wise"].get<bool>()) o.fail("is_wise");

    const std::vector<std::pair<std::vector<std::string>, int>> fixtures{
        {{"analyze"}, cli::kUsage},
        {{"analyze", "--data", kFx + "/two_judges.csv", "--model", kFx + "/singleton_model.json"}, cli::kUsage},
        {{"analyze", "--data", kFx + "/no_criterion.csv"}, cli::kDataError},
        {{"analyze", "--data", kFx + "/non_numeric.csv"}, cli::kDataError},
        {{"analyze", "--data", kFx + "/duplicate_label.csv"}, cli::kDataError},
        {{"analyze", "--data", kFx + "/one_row.csv"}, cli::kDataError},
        {{"optimize", "--model", kFx + "/non_psd_model.json"}, cli::kDataError},
        {{"optimize", "--model", kFx + "/garbage_model.json"}, cli::kDataError},
        {{"analyze", "--model", kFx + "/singleton_model.json"}, cli::kOk},
    };
    for (const auto& [args, expected] : fixtures) {
        const int got = run(args).first;
        if (got != expected) o.fail(args[0] + " " + args.back() + " exited " + std::to_string(got));
    }
    // Numerical failure class: the solver cannot finish within its budget, and infeasible correlations.
    try {
        optimal_weights(corpus_model(0, 5, 5, 9), 1e-30, 3);
        o.fail("NoConvergence not raised");
    } catch (const Error& e) {
        if (!is_numerical(e.kind())) o.fail("NoConvergence not classed as numerical");
    }
    try {
        random_model(3, 1, 1.0, -0.6, -0.6, 1.0);
        o.fail("InfeasibleCorrelationRange not raised");
    } catch (const Error& e) {
        if (!is_numerical(e.kind())) o.fail("InfeasibleCorrelationRange not classed as numerical");
    }
    if (o.pass) o.detail = "report (0.5, 0.75, 0.25) reproduced; " + std::to_string(fixtures.size()) +
                           " exit-code fixtures match";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 vertex consistency", vertex_consistency},
        {"2 Galton law", galton_law},
        {"3 bias robustness", bias_robustness},
        {"4 hedging", hedging},
        {"5 always-wise optimal weights", always_wise},
        {"6 QP oracle", qp_oracle},
        {"7 Monte Carlo agreement", monte_carlo},
        {"8 diversity trade-off", diversity_fixture},
        {"9 CLI round trip", cli_round_trip},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << fmt(secs) << "s)  " << o.detail << "\n";
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
