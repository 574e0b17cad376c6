#include "wisecrowd/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace wisecrowd {

WeightVector uniform_weights(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::ZeroJudges, "cannot build weights for zero judges");
    return WeightVector(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

SelectionDistribution uniform_selection(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::ZeroJudges, "cannot build a selection over zero judges");
    return SelectionDistribution(
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

SkillProfile skill_scores(const CrowdModel& model) {
    if (!(model.criterion_var > 0.0))
        throw Error(ErrorKind::ZeroCriterionVariance,
                    "criterion variance is zero; predictive validity is undefined for a fixed criterion "
                    "(use inverse-mse weighting instead)");
    std::string undefined;
    for (Eigen::Index i = 0; i < model.judge_cov.rows(); ++i) {
        if (!(model.judge_cov(i, i) > 0.0)) {
            if (!undefined.empty()) undefined += ", ";
            undefined += i < static_cast<Eigen::Index>(model.judge_labels.size())
                             ? model.judge_labels[static_cast<std::size_t>(i)]
                             : std::to_string(i);
        }
    }
    if (!undefined.empty())
        throw Error(ErrorKind::UndefinedSkill, "judges with zero prediction variance: " + undefined);

    const double sd_y = std::sqrt(model.criterion_var);
    SkillProfile profile;
    profile.skills = model.cross_cov.array() / (model.judge_cov.diagonal().array().sqrt() * sd_y);
    return profile;
}

SkillWeighting weights_from_skills(const Eigen::VectorXd& skills, bool floor_at_zero) {
    const auto n = static_cast<std::size_t>(skills.size());
    Eigen::VectorXd mass;
    if (floor_at_zero) {
        mass = skills.cwiseMax(0.0);
    } else {
        const double shift = std::min(skills.minCoeff(), 0.0);
        mass = skills.array() - shift;
    }
    if (!(mass.sum() > 0.0)) return {uniform_weights(n), true};
    return {WeightVector(mass), false};
}

SkillWeighting skill_weights(const CrowdModel& model, bool floor_at_zero) {
    return weights_from_skills(skill_scores(model).skills, floor_at_zero);
}

SkillSelection skill_selection(const CrowdModel& model, bool floor_at_zero) {
    auto w = skill_weights(model, floor_at_zero);
    return {SelectionDistribution(w.weights.values()), w.skill_degenerate};
}

InverseMseWeighting inverse_mse_weights(const CrowdModel& model) {
    const Eigen::VectorXd mse = per_judge_mse(model);
    const double scale = std::max(1.0, mse.cwiseAbs().maxCoeff());
    Eigen::VectorXd zero_mask = (mse.array() <= 1e-14 * scale).cast<double>();
    if (zero_mask.sum() > 0.0) return {WeightVector(zero_mask), true};
    return {WeightVector(mse.cwiseInverse()), false};
}

BestMember best_member_selection(const CrowdModel& model) {
    const Eigen::VectorXd mse = per_judge_mse(model);
    const double best = mse.minCoeff();
    const double tol = 1e-12 * std::max(1.0, std::abs(best));
    std::size_t index = 0;
    std::size_t count = 0;
    for (Eigen::Index i = mse.size() - 1; i >= 0; --i) {
        if (mse[i] <= best + tol) {
            index = static_cast<std::size_t>(i);
            ++count;
        }
    }
    return {SelectionDistribution::point_mass(model.size(), index), index, count > 1};
}

WeightVector project_to_simplex(const Eigen::VectorXd& v) {
    if (v.size() == 0) throw Error(ErrorKind::ZeroJudges, "cannot project an empty vector");
    if (!v.allFinite()) throw Error(ErrorKind::InvalidDistribution, "cannot project a non-finite vector");
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) theta = candidate;
    }
    return WeightVector((v.array() - theta).cwiseMax(0.0).matrix());
}

double crowd_objective(const CrowdModel& model, const Eigen::VectorXd& w) {
    const double bias = detail::dot(model.judge_means, w) - model.criterion_mean;
    return bias * bias + detail::quadratic_form(model.judge_cov, w) + -2.0 * detail::dot(w, model.cross_cov) +
           model.criterion_var;
}

Eigen::VectorXd crowd_gradient(const CrowdModel& model, const Eigen::VectorXd& w) {
    const double bias = detail::dot(model.judge_means, w) - model.criterion_mean;
    return 2.0 * bias * model.judge_means + 2.0 * (model.judge_cov * w) - 2.0 * model.cross_cov;
}

double kkt_residual(const Eigen::VectorXd& w, const Eigen::VectorXd& gradient) {
    const double floor = gradient.minCoeff();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) worst = std::max(worst, gradient[i] - floor);
    return worst;
}

namespace {

double largest_eigenvalue(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i) / static_cast<double>(n);
    v.normalize();
    double lambda = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Eigen::VectorXd u = m * v;
        const double next = v.dot(u);
        const double norm = u.norm();
        if (norm == 0.0) return 0.0;
        v = u / norm;
        const bool done = k > 0 && std::abs(next - lambda) <= 1e-12 * std::abs(next);
        lambda = next;
        if (done) break;
    }
    return std::max(lambda, 0.0);
}

std::vector<Eigen::Index> support_of(const Eigen::VectorXd& w) {
    std::vector<Eigen::Index> s;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) s.push_back(i);
    return s;
}

// Minimizer of the objective on the affine hull of the face spanned by `support`.
Eigen::VectorXd face_minimizer(const Eigen::MatrixXd& curvature, const Eigen::VectorXd& linear,
                               const std::vector<Eigen::Index>& support, Eigen::Index n) {
    const auto k = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) kkt(a, b) = 2.0 * curvature(support[a], support[b]);
        kkt(a, k) = kkt(k, a) = 1.0;
        rhs[a] = 2.0 * linear[support[a]];
    }
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (Eigen::Index a = 0; a < k; ++a) full[support[a]] = sol[a];
    return full;
}

// Moves from w toward target, stopping where the segment leaves the simplex.
Eigen::VectorXd step_within_simplex(const Eigen::VectorXd& w, const Eigen::VectorXd& target) {
    const Eigen::VectorXd d = target - w;
    double t = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (d[i] < 0.0 && w[i] + d[i] < 0.0) {
            const double ti = w[i] / -d[i];
            if (ti < t) {
                t = ti;
                blocking = i;
            }
        }
    }
    Eigen::VectorXd next = (w + t * d).cwiseMax(0.0);
    if (blocking >= 0) next[blocking] = 0.0;
    const double total = next.sum();
    return total > 0.0 ? Eigen::VectorXd(next / total) : w;
}

// Smallest curvature of the objective along directions that keep sum(w) = 1.
double tangent_min_curvature(const Eigen::MatrixXd& curvature, const std::vector<Eigen::Index>& dims) {
    const auto k = static_cast<Eigen::Index>(dims.size());
    if (k < 2) return std::numeric_limits<double>::infinity();
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = curvature(dims[a], dims[b]);
    // Orthonormal basis of the sum-zero subspace: trailing columns of Q from QR of the ones vector.
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Ones(k, 1)).householderQ();
    const Eigen::MatrixXd z = q.rightCols(k - 1);
    const Eigen::MatrixXd projected = z.transpose() * sub * z;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (projected + projected.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return 2.0 * es.eigenvalues().minCoeff();
}

}  // namespace

QPSolution optimal_weights(const CrowdModel& model, double tolerance, std::size_t max_iterations) {
    require_valid(model);
    const auto n = static_cast<Eigen::Index>(model.size());

    if (n == 1) {
        const WeightVector w = WeightVector::vertex(1, 0);
        return {w, crowd_mse(model, w).total, 0, 0.0, false};
    }

    // f(w) = w'Aw - 2 c'w + const on the simplex.
    const Eigen::MatrixXd curvature = model.judge_cov + model.judge_means * model.judge_means.transpose();
    const Eigen::VectorXd linear = model.cross_cov + model.criterion_mean * model.judge_means;

    const double lipschitz = 2.0 * (largest_eigenvalue(model.judge_cov) + model.judge_means.squaredNorm());
    const double effective_tol = tolerance * std::max(1.0, lipschitz / 2.0);

    auto finish = [&](const Eigen::VectorXd& w, std::size_t iterations, double residual) {
        std::vector<Eigen::Index> dims;
        if (n <= 1000) {
            dims.resize(static_cast<std::size_t>(n));
            std::iota(dims.begin(), dims.end(), Eigen::Index{0});
        } else {
            dims = support_of(w);
        }
        const bool flat = tangent_min_curvature(curvature, dims) < 1e-10 * std::max(1.0, lipschitz / 2.0);
        WeightVector weights(w);
        return QPSolution{weights, crowd_mse(model, weights).total, iterations, residual, flat};
    };

    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    if (!(lipschitz > 0.0)) {
        // Zero curvature: with a PSD joint covariance the gradient vanishes too.
        return finish(w, 0, kkt_residual(w, crowd_gradient(model, w)));
    }

    Eigen::VectorXd best = w;
    double best_f = crowd_objective(model, w);

    std::vector<Eigen::Index> support = support_of(w);
    std::vector<Eigen::Index> polished_support;
    std::size_t stable = 0;
    std::size_t since_polish = 0;

    for (std::size_t it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd g = crowd_gradient(model, w);
        const double residual = kkt_residual(w, g);
        const double f = crowd_objective(model, w);
        if (f <= best_f) {
            best = w;
            best_f = f;
        }
        if (residual <= effective_tol) return finish(w, it, residual);

        ++since_polish;
        if (stable >= 3 && (support != polished_support || since_polish >= 25)) {
            polished_support = support;
            since_polish = 0;
            const Eigen::VectorXd target = face_minimizer(curvature, linear, support, n);
            if (target.allFinite()) {
                const Eigen::VectorXd candidate = step_within_simplex(w, target);
                if (crowd_objective(model, candidate) <= f + 1e-14 * (1.0 + std::abs(f))) {
                    w = candidate;
                    const auto next_support = support_of(w);
                    stable = next_support == support ? stable : 0;
                    support = next_support;
                    continue;
                }
            }
        }

        w = project_to_simplex(w - g / lipschitz).values();
        auto next_support = support_of(w);
        stable = next_support == support ? stable + 1 : 0;
        support = std::move(next_support);
    }

    const Eigen::VectorXd g = crowd_gradient(model, best);
    QPSolution partial{WeightVector(best), crowd_objective(model, best), max_iterations, kkt_residual(best, g),
                       false};
    throw NoConvergence("no convergence after " + std::to_string(max_iterations) + " iterations (KKT residual " +
                            std::to_string(partial.kkt_residual) + ")",
                        partial);
}

}  // namespace wisecrowd
