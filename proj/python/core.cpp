#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "wisecrowd/cli.hpp"
#include "wisecrowd/diversity.hpp"
#include "wisecrowd/io.hpp"
#include "wisecrowd/model.hpp"
#include "wisecrowd/montecarlo.hpp"
#include "wisecrowd/schemes.hpp"
#include "wisecrowd/wisdom.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace wisecrowd;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact crowd-versus-individual squared-error analysis";

    static py::exception<Error> crowd_error(m, "CrowdError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = crowd_error;
            py::object instance = err(e.what());
            instance.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(err.ptr(), instance.ptr());
        }
    });

    py::class_<CrowdModel>(m, "CrowdModel")
        .def(py::init([](Eigen::VectorXd means, Eigen::MatrixXd cov, double criterion_mean, double criterion_var,
                         Eigen::VectorXd cross_cov, std::vector<std::string> labels) {
                 CrowdModel model{std::move(means), std::move(cov), criterion_mean, criterion_var,
                                  std::move(cross_cov), std::move(labels)};
                 if (model.judge_labels.empty()) model.judge_labels = default_labels(model.size());
                 return model;
             }),
             py::arg("judge_means"), py::arg("judge_cov"), py::arg("criterion_mean"), py::arg("criterion_var"),
             py::arg("cross_cov"), py::arg("judge_labels") = std::vector<std::string>{})
        .def_readwrite("judge_means", &CrowdModel::judge_means)
        .def_readwrite("judge_cov", &CrowdModel::judge_cov)
        .def_readwrite("criterion_mean", &CrowdModel::criterion_mean)
        .def_readwrite("criterion_var", &CrowdModel::criterion_var)
        .def_readwrite("cross_cov", &CrowdModel::cross_cov)
        .def_readwrite("judge_labels", &CrowdModel::judge_labels)
        .def_property_readonly("size", &CrowdModel::size)
        .def("joint_cov", &CrowdModel::joint_cov);

    py::class_<JudgmentSample>(m, "JudgmentSample")
        .def(py::init([](Eigen::MatrixXd judgments, Eigen::VectorXd criterion, std::vector<std::string> labels) {
                 return JudgmentSample{std::move(judgments), std::move(criterion), std::move(labels)};
             }),
             py::arg("judgments"), py::arg("criterion"), py::arg("judge_labels") = std::vector<std::string>{})
        .def_readwrite("judgments", &JudgmentSample::judgments)
        .def_readwrite("criterion", &JudgmentSample::criterion)
        .def_readwrite("judge_labels", &JudgmentSample::judge_labels);

    py::class_<WeightVector>(m, "WeightVector")
        .def(py::init<const Eigen::VectorXd&>())
        .def_property_readonly("values", &WeightVector::values)
        .def("__len__", &WeightVector::size);
    py::class_<SelectionDistribution>(m, "SelectionDistribution")
        .def(py::init<const Eigen::VectorXd&>())
        .def_property_readonly("values", &SelectionDistribution::values)
        .def("__len__", &SelectionDistribution::size);

    py::class_<CrowdMse>(m, "CrowdMse")
        .def_readonly("total", &CrowdMse::total)
        .def_readonly("bias_sq", &CrowdMse::bias_sq)
        .def_readonly("variance", &CrowdMse::variance)
        .def_readonly("cross_term", &CrowdMse::cross_term)
        .def_readonly("criterion_var", &CrowdMse::criterion_var);
    py::class_<IndividualMse>(m, "IndividualMse")
        .def_readonly("total", &IndividualMse::total)
        .def_readonly("per_judge", &IndividualMse::per_judge);

    py::class_<WisdomReport>(m, "WisdomReport")
        .def_readonly("crowd_mse", &WisdomReport::crowd_mse)
        .def_readonly("individual_mse", &WisdomReport::individual_mse)
        .def_readonly("wisdom_gap", &WisdomReport::wisdom_gap)
        .def_readonly("is_wise", &WisdomReport::is_wise)
        .def_readonly("crowd_bias_sq", &WisdomReport::crowd_bias_sq)
        .def_readonly("crowd_variance", &WisdomReport::crowd_variance)
        .def_readonly("crowd_cross_term", &WisdomReport::crowd_cross_term)
        .def_readonly("criterion_var", &WisdomReport::criterion_var)
        .def_readonly("per_judge_mse", &WisdomReport::per_judge_mse);

    py::class_<SkillWeighting>(m, "SkillWeighting")
        .def_readonly("weights", &SkillWeighting::weights)
        .def_readonly("skill_degenerate", &SkillWeighting::skill_degenerate);
    py::class_<SkillSelection>(m, "SkillSelection")
        .def_readonly("selection", &SkillSelection::selection)
        .def_readonly("skill_degenerate", &SkillSelection::skill_degenerate);
    py::class_<BestMember>(m, "BestMember")
        .def_readonly("selection", &BestMember::selection)
        .def_readonly("index", &BestMember::index)
        .def_readonly("tie", &BestMember::tie);
    py::class_<InverseMseWeighting>(m, "InverseMseWeighting")
        .def_readonly("weights", &InverseMseWeighting::weights)
        .def_readonly("zero_error_judges", &InverseMseWeighting::zero_error_judges);
    py::class_<QPSolution>(m, "QPSolution")
        .def_readonly("weights", &QPSolution::weights)
        .def_readonly("objective", &QPSolution::objective)
        .def_readonly("iterations", &QPSolution::iterations)
        .def_readonly("kkt_residual", &QPSolution::kkt_residual)
        .def_readonly("non_unique", &QPSolution::non_unique);

    py::enum_<SelectionRule>(m, "SelectionRule")
        .value("UNIFORM", SelectionRule::Uniform)
        .value("SKILL", SelectionRule::Skill)
        .value("BEST", SelectionRule::Best);

    py::class_<CandidateMember>(m, "CandidateMember")
        .def(py::init([](std::string label, double mean, double variance, Eigen::VectorXd cov_with_members,
                         double cov_with_criterion) {
                 return CandidateMember{std::move(label), mean, variance, std::move(cov_with_members),
                                        cov_with_criterion};
             }),
             py::arg("label"), py::arg("mean"), py::arg("variance"), py::arg("cov_with_members"),
             py::arg("cov_with_criterion"))
        .def_readwrite("label", &CandidateMember::label)
        .def_readwrite("mean", &CandidateMember::mean)
        .def_readwrite("variance", &CandidateMember::variance)
        .def_readwrite("cov_with_members", &CandidateMember::cov_with_members)
        .def_readwrite("cov_with_criterion", &CandidateMember::cov_with_criterion);

    py::class_<CandidateEvaluation>(m, "CandidateEvaluation")
        .def_readonly("label", &CandidateEvaluation::label)
        .def_readonly("input_index", &CandidateEvaluation::input_index)
        .def_readonly("before", &CandidateEvaluation::before)
        .def_readonly("after", &CandidateEvaluation::after)
        .def_readonly("before_weights", &CandidateEvaluation::before_weights)
        .def_readonly("after_weights", &CandidateEvaluation::after_weights)
        .def_readonly("marginal_gain", &CandidateEvaluation::marginal_gain)
        .def_readonly("candidate_weight", &CandidateEvaluation::candidate_weight)
        .def_readonly("candidate_skill", &CandidateEvaluation::candidate_skill)
        .def_readonly("uniform_marginal_gain", &CandidateEvaluation::uniform_marginal_gain);
    py::class_<CandidateFailure>(m, "CandidateFailure")
        .def_readonly("label", &CandidateFailure::label)
        .def_readonly("input_index", &CandidateFailure::input_index)
        .def_readonly("message", &CandidateFailure::message);
    py::class_<CandidateRanking>(m, "CandidateRanking")
        .def_readonly("ranked", &CandidateRanking::ranked)
        .def_readonly("failures", &CandidateRanking::failures);

    py::enum_<Generator>(m, "Generator").value("GAUSSIAN", Generator::Gaussian).value("UNIFORM", Generator::Uniform);
    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("empirical_crowd_mse", &SimulationResult::empirical_crowd_mse)
        .def_readonly("empirical_individual_mse", &SimulationResult::empirical_individual_mse)
        .def_readonly("standard_errors", &SimulationResult::standard_errors)
        .def_readonly("trials", &SimulationResult::trials)
        .def_readonly("seed", &SimulationResult::seed)
        .def_readonly("degenerate_standard_error", &SimulationResult::degenerate_standard_error);

    m.def("validate_model", &validate_model, py::arg("model"));
    m.def("estimate_model", &estimate_model, py::arg("sample"));
    m.def("fixed_criterion_model", &fixed_criterion_model, py::arg("judge_means"), py::arg("judge_cov"),
          py::arg("true_value"), py::arg("judge_labels") = std::vector<std::string>{});

    m.def("crowd_mse", &crowd_mse, py::arg("model"), py::arg("weights"));
    m.def("individual_mse", &individual_mse, py::arg("model"), py::arg("selection"));
    m.def("evaluate", &evaluate, py::arg("model"), py::arg("weights"), py::arg("selection"));

    m.def("uniform_weights", &uniform_weights, py::arg("n"));
    m.def("uniform_selection", &uniform_selection, py::arg("n"));
    m.def("skill_scores", [](const CrowdModel& model) { return skill_scores(model).skills; }, py::arg("model"));
    m.def("skill_weights", &skill_weights, py::arg("model"), py::arg("floor_at_zero") = true);
    m.def("skill_selection", &skill_selection, py::arg("model"), py::arg("floor_at_zero") = true);
    m.def("inverse_mse_weights", &inverse_mse_weights, py::arg("model"));
    m.def("best_member_selection", &best_member_selection, py::arg("model"));
    m.def("project_to_simplex", &project_to_simplex, py::arg("v"));
    m.def("optimal_weights", &optimal_weights, py::arg("model"), py::arg("tolerance") = 1e-10,
          py::arg("max_iterations") = 100000);

    m.def("extend_model", &extend_model, py::arg("model"), py::arg("candidate"));
    m.def("evaluate_candidate", &evaluate_candidate, py::arg("model"), py::arg("candidate"),
          py::arg("rule") = SelectionRule::Uniform);
    m.def("rank_candidates", &rank_candidates, py::arg("model"), py::arg("candidates"),
          py::arg("rule") = SelectionRule::Uniform);

    m.def(
        "simulate",
        [](const CrowdModel& model, const WeightVector& w, const SelectionDistribution& p, std::size_t trials,
           std::uint64_t seed, Generator generator) {
            py::gil_scoped_release release;
            return simulate({model, trials, seed, generator}, w, p);
        },
        py::arg("model"), py::arg("weights"), py::arg("selection"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("generator") = Generator::Gaussian);
    m.def("random_model", &random_model, py::arg("n_judges"), py::arg("seed"), py::arg("bias_scale") = 1.0,
          py::arg("correlation_low") = -1.0, py::arg("correlation_high") = 1.0, py::arg("criterion_var") = 1.0);

    m.def("ingest_csv", &io::ingest_csv, py::arg("path"));
    m.def("load_model", &io::load_model, py::arg("path"));
    m.def("save_model", &io::save_model, py::arg("model"), py::arg("path"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"wisecrowd"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
