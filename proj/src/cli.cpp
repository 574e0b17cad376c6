#include "wisecrowd/cli.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "wisecrowd/diversity.hpp"
#include "wisecrowd/io.hpp"
#include "wisecrowd/schemes.hpp"
#include "wisecrowd/wisdom.hpp"

namespace wisecrowd::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

struct Resolved {
    std::string scheme;
    Eigen::VectorXd values;
    std::vector<std::string> notes;
    std::optional<QPSolution> qp;
};

Resolved resolve_weights(const CrowdModel& model, const std::string& scheme) {
    Resolved r{scheme, {}, {}, std::nullopt};
    if (scheme == "uniform") {
        r.values = uniform_weights(model.size()).values();
    } else if (scheme == "skill") {
        auto s = skill_weights(model);
        r.values = s.weights.values();
        if (s.skill_degenerate) r.notes.emplace_back("SkillDegenerate: no judge has positive skill; using uniform");
    } else if (scheme == "inverse-mse") {
        auto s = inverse_mse_weights(model);
        r.values = s.weights.values();
        if (s.zero_error_judges) r.notes.emplace_back("some judges have zero expected error; weight split among them");
    } else if (scheme == "optimal") {
        auto qp = optimal_weights(model);
        r.values = qp.weights.values();
        if (qp.non_unique) r.notes.emplace_back("optimal weights are not unique (flat objective direction)");
        r.qp = std::move(qp);
    } else {
        const Eigen::VectorXd raw = io::read_vector(scheme);
        if (static_cast<std::size_t>(raw.size()) != model.size())
            throw Error(ErrorKind::ShapeMismatch, "weights file has " + std::to_string(raw.size()) +
                                                      " entries for " + std::to_string(model.size()) + " judges");
        r.scheme = "file:" + scheme;
        r.values = WeightVector(raw).values();
    }
    return r;
}

Resolved resolve_selection(const CrowdModel& model, const std::string& scheme) {
    Resolved r{scheme, {}, {}, std::nullopt};
    if (scheme == "uniform") {
        r.values = uniform_selection(model.size()).values();
    } else if (scheme == "skill") {
        auto s = skill_selection(model);
        r.values = s.selection.values();
        if (s.skill_degenerate) r.notes.emplace_back("SkillDegenerate: no judge has positive skill; using uniform");
    } else if (scheme == "best") {
        auto b = best_member_selection(model);
        r.values = b.selection.values();
        if (b.tie)
            r.notes.emplace_back("tie for best member; lowest index chosen (" +
                                 model.judge_labels[b.index] + ")");
    } else {
        const Eigen::VectorXd raw = io::read_vector(scheme);
        if (static_cast<std::size_t>(raw.size()) != model.size())
            throw Error(ErrorKind::ShapeMismatch, "selection file has " + std::to_string(raw.size()) +
                                                      " entries for " + std::to_string(model.size()) + " judges");
        r.scheme = "file:" + scheme;
        r.values = SelectionDistribution(raw).values();
    }
    return r;
}

CrowdModel load_input(const AnalysisRequest& req) {
    if (req.data_csv.has_value() == req.model_file.has_value())
        throw UsageError("exactly one of --data or --model is required");
    CrowdModel model = req.data_csv ? estimate_model(io::ingest_csv(*req.data_csv)) : io::load_model(*req.model_file);
    require_valid(model);
    if (req.save_model) io::save_model(model, *req.save_model);
    return model;
}

std::optional<Eigen::VectorXd> try_skills(const CrowdModel& model, std::string& note) {
    try {
        return skill_scores(model).skills;
    } catch (const Error& e) {
        note = e.what();
        return std::nullopt;
    }
}

json report_json(const WisdomReport& r) {
    return json{{"crowd_mse", r.crowd_mse},
                {"individual_mse", r.individual_mse},
                {"wisdom_gap", r.wisdom_gap},
                {"is_wise", r.is_wise},
                {"crowd_bias_sq", r.crowd_bias_sq},
                {"crowd_variance", r.crowd_variance},
                {"crowd_cross_term", r.crowd_cross_term},
                {"criterion_var", r.criterion_var},
                {"per_judge_mse", to_std(r.per_judge_mse)}};
}

json resolved_json(const Resolved& r) {
    return json{{"scheme", r.scheme}, {"values", to_std(r.values)}, {"notes", r.notes}};
}

json qp_json(const QPSolution& qp) {
    return json{{"weights", to_std(qp.weights.values())},
                {"objective", qp.objective},
                {"iterations", qp.iterations},
                {"kkt_residual", qp.kkt_residual},
                {"non_unique", qp.non_unique}};
}

json judges_json(const CrowdModel& model, const std::optional<Eigen::VectorXd>& skills) {
    json judges = json::array();
    for (std::size_t i = 0; i < model.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        judges.push_back({{"label", model.judge_labels[i]},
                          {"mean", model.judge_means[k]},
                          {"variance", model.judge_cov(k, k)},
                          {"cov_with_criterion", model.cross_cov[k]},
                          {"skill", skills ? json((*skills)[k]) : json(nullptr)}});
    }
    return judges;
}

json document(Command c) {
    static const char* names[] = {"analyze", "optimize", "candidate", "simulate", "sweep"};
    return json{{"schema_version", kReportSchemaVersion}, {"command", names[static_cast<int>(c)]}};
}

void print_report(std::ostream& out, const WisdomReport& r, const std::string& indent = "  ") {
    const std::pair<const char*, double> rows[] = {
        {"crowd_mse", r.crowd_mse},           {"individual_mse", r.individual_mse},
        {"wisdom_gap", r.wisdom_gap},         {"crowd_bias_sq", r.crowd_bias_sq},
        {"crowd_variance", r.crowd_variance}, {"crowd_cross_term", r.crowd_cross_term},
        {"criterion_var", r.criterion_var},
    };
    for (const auto& [name, value] : rows) out << indent << std::left << std::setw(18) << name << num(value) << "\n";
    out << indent << std::left << std::setw(18) << "is_wise" << (r.is_wise ? "true" : "false") << "\n";
}

void print_judges(std::ostream& out, const CrowdModel& model, const WisdomReport& r, const Eigen::VectorXd& w,
                  const Eigen::VectorXd& p, const std::optional<Eigen::VectorXd>& skills) {
    out << "  " << std::left << std::setw(14) << "judge" << std::setw(14) << "mean" << std::setw(16)
        << "per_judge_mse" << std::setw(14) << "skill" << std::setw(14) << "weight" << "selection\n";
    for (std::size_t i = 0; i < model.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out << "  " << std::left << std::setw(14) << model.judge_labels[i] << std::setw(14)
            << num(model.judge_means[k]) << std::setw(16) << num(r.per_judge_mse[k]) << std::setw(14)
            << (skills ? num((*skills)[k]) : std::string("-")) << std::setw(14) << num(w[k]) << num(p[k]) << "\n";
    }
}

void print_notes(std::ostream& out, const Resolved& r, const char* what) {
    for (const auto& n : r.notes) out << "note (" << what << "): " << n << "\n";
}

int cmd_analyze(const AnalysisRequest& req, std::ostream& out) {
    const CrowdModel model = load_input(req);
    const Resolved w = resolve_weights(model, req.weights);
    const Resolved p = resolve_selection(model, req.selection);
    const WisdomReport r = evaluate(model, WeightVector(w.values), SelectionDistribution(p.values));
    std::string skill_note;
    const auto skills = try_skills(model, skill_note);

    if (req.format == Format::Machine) {
        json doc = document(req.command);
        doc["judges"] = judges_json(model, skills);
        if (!skill_note.empty()) doc["skill_note"] = skill_note;
        doc["weights"] = resolved_json(w);
        doc["selection"] = resolved_json(p);
        if (w.qp) doc["qp"] = qp_json(*w.qp);
        doc["report"] = report_json(r);
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "wisdom report (weights: " << w.scheme << ", selection: " << p.scheme << ")\n";
    print_report(out, r);
    out << "\n";
    print_judges(out, model, r, w.values, p.values, skills);
    if (!skill_note.empty()) out << "note (skill): " << skill_note << "\n";
    print_notes(out, w, "weights");
    print_notes(out, p, "selection");
    out << "note: weights are treated as fixed in advance; weights estimated from the same data they are\n"
           "      evaluated on will overstate the crowd's advantage.\n";
    return kOk;
}

int cmd_optimize(const AnalysisRequest& req, std::ostream& out) {
    const CrowdModel model = load_input(req);
    const QPSolution qp = optimal_weights(model);
    const Resolved p = resolve_selection(model, req.selection);
    const WisdomReport r = evaluate(model, qp.weights, SelectionDistribution(p.values));
    std::string skill_note;
    const auto skills = try_skills(model, skill_note);

    if (req.format == Format::Machine) {
        json doc = document(req.command);
        doc["judges"] = judges_json(model, skills);
        if (!skill_note.empty()) doc["skill_note"] = skill_note;
        doc["qp"] = qp_json(qp);
        doc["selection"] = resolved_json(p);
        doc["report"] = report_json(r);
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "optimal weights\n";
    out << "  " << std::left << std::setw(18) << "objective" << num(qp.objective) << "\n";
    out << "  " << std::left << std::setw(18) << "iterations" << qp.iterations << "\n";
    out << "  " << std::left << std::setw(18) << "kkt_residual" << num(qp.kkt_residual) << "\n";
    out << "  " << std::left << std::setw(18) << "non_unique" << (qp.non_unique ? "true" : "false") << "\n";
    out << "\nwisdom report (weights: optimal, selection: " << p.scheme << ")\n";
    print_report(out, r);
    out << "\n";
    print_judges(out, model, r, qp.weights.values(), p.values, skills);
    print_notes(out, p, "selection");
    return kOk;
}

int cmd_candidate(const AnalysisRequest& req, std::ostream& out, std::ostream& err) {
    if (!req.candidates_csv) throw UsageError("candidate requires --candidates <csv>");
    const CrowdModel model = load_input(req);
    const SelectionRule rule = [&] {
        try {
            return parse_selection_rule(req.selection);
        } catch (const Error&) {
            throw UsageError("candidate supports --selection uniform|skill|best only");
        }
    }();
    const auto candidates = io::read_candidates(*req.candidates_csv, model.judge_labels);
    const auto ranking = rank_candidates(model, candidates, rule);
    for (const auto& f : ranking.failures)
        err << "candidate '" << f.label << "' (row " << f.input_index + 2 << ") skipped: " << f.message << "\n";

    if (req.format == Format::Machine) {
        json doc = document(req.command);
        doc["selection"] = std::string(to_string(rule));
        json ranked = json::array();
        for (std::size_t i = 0; i < ranking.ranked.size(); ++i) {
            const auto& e = ranking.ranked[i];
            ranked.push_back({{"rank", i + 1},
                              {"label", e.label},
                              {"input_index", e.input_index},
                              {"marginal_gain", e.marginal_gain},
                              {"candidate_weight", e.candidate_weight},
                              {"candidate_skill", e.candidate_skill ? json(*e.candidate_skill) : json(nullptr)},
                              {"before", report_json(e.before)},
                              {"after", report_json(e.after)},
                              {"before_weights", to_std(e.before_weights.values())},
                              {"after_weights", to_std(e.after_weights.values())},
                              {"uniform_before_mse", e.uniform_before_mse},
                              {"uniform_after_mse", e.uniform_after_mse},
                              {"uniform_marginal_gain", e.uniform_marginal_gain}});
        }
        doc["ranked"] = ranked;
        json failures = json::array();
        for (const auto& f : ranking.failures)
            failures.push_back({{"label", f.label},
                                {"input_index", f.input_index},
                                {"error", std::string(to_string(f.kind))},
                                {"message", f.message}});
        doc["failures"] = failures;
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "candidates ranked by marginal gain in optimal crowd MSE (selection: " << to_string(rule) << ")\n";
    out << "  " << std::left << std::setw(6) << "rank" << std::setw(14) << "label" << std::setw(16) << "marginal_gain"
        << std::setw(16) << "after_mse" << std::setw(12) << "weight" << std::setw(12) << "skill" << std::setw(14)
        << "after_gap" << "uniform_gain\n";
    for (std::size_t i = 0; i < ranking.ranked.size(); ++i) {
        const auto& e = ranking.ranked[i];
        out << "  " << std::left << std::setw(6) << i + 1 << std::setw(14) << e.label << std::setw(16)
            << num(e.marginal_gain) << std::setw(16) << num(e.after.crowd_mse) << std::setw(12)
            << num(e.candidate_weight) << std::setw(12) << (e.candidate_skill ? num(*e.candidate_skill) : "-")
            << std::setw(14) << num(e.after.wisdom_gap) << num(e.uniform_marginal_gain) << "\n";
    }
    if (!ranking.ranked.empty())
        out << "  before: optimal crowd_mse " << num(ranking.ranked.front().before.crowd_mse)
            << ", uniform crowd_mse " << num(ranking.ranked.front().uniform_before_mse) << "\n";
    return kOk;
}

int cmd_simulate(const AnalysisRequest& req, std::ostream& out) {
    const CrowdModel model = load_input(req);
    const Resolved w = resolve_weights(model, req.weights);
    const Resolved p = resolve_selection(model, req.selection);
    const WeightVector weights(w.values);
    const SelectionDistribution selection(p.values);
    const WisdomReport analytic = evaluate(model, weights, selection);
    const SimulationResult sim = simulate({model, req.trials, req.seed, req.generator}, weights, selection);
    const char* generator = req.generator == Generator::Gaussian ? "gaussian" : "uniform";

    if (req.format == Format::Machine) {
        json doc = document(req.command);
        doc["weights"] = resolved_json(w);
        doc["selection"] = resolved_json(p);
        doc["simulation"] = {{"empirical_crowd_mse", sim.empirical_crowd_mse},
                             {"empirical_individual_mse", sim.empirical_individual_mse},
                             {"standard_errors", {sim.standard_errors.first, sim.standard_errors.second}},
                             {"trials", sim.trials},
                             {"seed", sim.seed},
                             {"generator", generator},
                             {"degenerate_standard_error", sim.degenerate_standard_error}};
        doc["analytic"] = report_json(analytic);
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "simulation (" << generator << ", trials " << sim.trials << ", seed " << sim.seed << ")\n";
    out << "  " << std::left << std::setw(16) << "" << std::setw(16) << "empirical" << std::setw(16) << "std_error"
        << "analytic\n";
    out << "  " << std::left << std::setw(16) << "crowd_mse" << std::setw(16) << num(sim.empirical_crowd_mse)
        << std::setw(16) << num(sim.standard_errors.first) << num(analytic.crowd_mse) << "\n";
    out << "  " << std::left << std::setw(16) << "individual_mse" << std::setw(16)
        << num(sim.empirical_individual_mse) << std::setw(16) << num(sim.standard_errors.second)
        << num(analytic.individual_mse) << "\n";
    if (sim.degenerate_standard_error) out << "warning: a single trial has no standard error; reported as 0\n";
    print_notes(out, w, "weights");
    print_notes(out, p, "selection");
    return kOk;
}

struct SweepRow {
    double bias_scale;
    double correlation;
    std::size_t n;
    bool feasible;
    double uniform_crowd_mse = 0.0;
    double optimal_crowd_mse = 0.0;
    double individual_mse = 0.0;
};

// Unit-variance, equicorrelated judges estimating a fixed value of 0, with seeded biases.
CrowdModel sweep_model(double bias_scale, double correlation, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed + n);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd means(static_cast<Eigen::Index>(n));
    for (auto& m : means) m = bias_scale * normal(rng);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                                                    correlation);
    cov.diagonal().setOnes();
    return fixed_criterion_model(means, cov, 0.0);
}

int cmd_sweep(const AnalysisRequest& req, std::ostream& out) {
    const SweepGrid grid = req.sweep_grid ? load_sweep_grid(*req.sweep_grid) : SweepGrid{};
    const SelectionRule rule = [&] {
        try {
            return parse_selection_rule(req.selection);
        } catch (const Error&) {
            throw UsageError("sweep supports --selection uniform|skill|best only");
        }
    }();
    std::vector<SweepRow> rows;
    for (double b : grid.bias_scale) {
        for (double rho : grid.correlation) {
            for (std::size_t n : grid.n_judges) {
                SweepRow row{b, rho, n, n >= 1 && (n == 1 || rho >= min_common_correlation(n)) && rho <= 1.0};
                if (row.feasible) {
                    const CrowdModel model = sweep_model(b, rho, n, req.seed);
                    const auto p = derive_selection(model, rule);
                    row.uniform_crowd_mse = crowd_mse(model, uniform_weights(n)).total;
                    row.optimal_crowd_mse = optimal_weights(model).objective;
                    row.individual_mse = individual_mse(model, p).total;
                }
                rows.push_back(row);
            }
        }
    }

    if (req.format == Format::Machine) {
        json doc = document(req.command);
        doc["selection"] = std::string(to_string(rule));
        doc["seed"] = req.seed;
        json cells = json::array();
        for (const auto& r : rows) {
            json cell{{"bias_scale", r.bias_scale}, {"correlation", r.correlation}, {"n_judges", r.n},
                      {"status", r.feasible ? "ok" : "infeasible"}};
            if (r.feasible) {
                cell["uniform_crowd_mse"] = r.uniform_crowd_mse;
                cell["optimal_crowd_mse"] = r.optimal_crowd_mse;
                cell["individual_mse"] = r.individual_mse;
                cell["uniform_gap"] = r.individual_mse - r.uniform_crowd_mse;
                cell["optimal_gap"] = r.individual_mse - r.optimal_crowd_mse;
            }
            cells.push_back(cell);
        }
        doc["cells"] = cells;
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "bias_scale,correlation,n_judges,status,uniform_crowd_mse,optimal_crowd_mse,individual_mse,uniform_gap,"
           "optimal_gap\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.bias_scale << "," << r.correlation << "," << r.n << ",";
        if (!r.feasible) {
            out << "infeasible,,,,,\n";
            continue;
        }
        out << "ok," << r.uniform_crowd_mse << "," << r.optimal_crowd_mse << "," << r.individual_mse << ","
            << r.individual_mse - r.uniform_crowd_mse << "," << r.individual_mse - r.optimal_crowd_mse << "\n";
    }
    return kOk;
}

}  // namespace

SweepGrid load_sweep_grid(const std::filesystem::path& path) {
    SweepGrid grid;
    try {
        const auto doc = nlohmann::json::parse(io::read_file(path));
        if (doc.contains("bias_scale")) grid.bias_scale = doc.at("bias_scale").get<std::vector<double>>();
        if (doc.contains("correlation")) grid.correlation = doc.at("correlation").get<std::vector<double>>();
        if (doc.contains("n_judges")) grid.n_judges = doc.at("n_judges").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("sweep grid: ") + e.what());
    }
    for (auto n : grid.n_judges)
        if (n == 0) throw Error(ErrorKind::ZeroJudges, "sweep grid contains n_judges = 0");
    return grid;
}

int run(const AnalysisRequest& request, std::ostream& out, std::ostream& err) {
    // Render into a buffer so a failure never leaves a partial report on stdout.
    std::ostringstream buffer;
    try {
        int code = kOk;
        switch (request.command) {
            case Command::Analyze: code = cmd_analyze(request, buffer); break;
            case Command::Optimize: code = cmd_optimize(request, buffer); break;
            case Command::Candidate: code = cmd_candidate(request, buffer, err); break;
            case Command::Simulate: code = cmd_simulate(request, buffer); break;
            case Command::Sweep: code = cmd_sweep(request, buffer); break;
        }
        out << buffer.str();
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_numerical(e.kind()) ? kNumericalError : kDataError;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide whether a weighted crowd of judges beats a selected individual under squared error"};
    app.require_subcommand(1);
    AnalysisRequest req;

    std::string format = "human";
    std::string generator = "gaussian";
    std::string data;
    std::string model;
    std::string candidates;
    std::string save;
    std::string grid;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--data", data, "trials-by-judges CSV with a 'criterion' column");
        sub->add_option("--model", model, "model file (JSON)");
        sub->add_option("--save-model", save, "write the loaded or estimated model to this file");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "human | machine")->check(CLI::IsMember({"human", "machine"}));
    };
    auto add_weights = [&](CLI::App* sub) {
        sub->add_option("--weights", req.weights, "uniform | skill | inverse-mse | optimal | <file>");
    };
    auto add_selection = [&](CLI::App* sub, const char* help) { sub->add_option("--selection", req.selection, help); };

    auto* analyze = app.add_subcommand("analyze", "evaluate crowd versus individual expected squared error");
    add_input(analyze);
    add_weights(analyze);
    add_selection(analyze, "uniform | skill | best | <file>");
    add_format(analyze);

    auto* optimize = app.add_subcommand("optimize", "solve for minimum-error aggregation weights");
    add_input(optimize);
    add_selection(optimize, "uniform | skill | best | <file>");
    add_format(optimize);

    auto* candidate = app.add_subcommand("candidate", "rank prospective crowd members by marginal gain");
    add_input(candidate);
    candidate->add_option("--candidates", candidates, "candidate CSV")->required();
    add_selection(candidate, "uniform | skill | best");
    add_format(candidate);

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo check of the analytic errors");
    add_input(simulate_cmd);
    add_weights(simulate_cmd);
    add_selection(simulate_cmd, "uniform | skill | best | <file>");
    simulate_cmd->add_option("--trials", req.trials, "number of simulated trials")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", req.seed, "random seed");
    simulate_cmd->add_option("--generator", generator, "gaussian | uniform")
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    add_format(simulate_cmd);

    auto* sweep = app.add_subcommand("sweep", "grid of analytic wisdom gaps over bias, correlation and crowd size");
    sweep->add_option("--sweep-grid", grid, "JSON grid with bias_scale, correlation, n_judges arrays");
    sweep->add_option("--seed", req.seed, "seed for the judges' biases");
    add_selection(sweep, "uniform | skill | best");
    add_format(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    if (*analyze) req.command = Command::Analyze;
    else if (*optimize) req.command = Command::Optimize;
    else if (*candidate) req.command = Command::Candidate;
    else if (*simulate_cmd) req.command = Command::Simulate;
    else req.command = Command::Sweep;

    req.format = format == "machine" ? Format::Machine : Format::Human;
    req.generator = generator == "uniform" ? Generator::Uniform : Generator::Gaussian;
    if (!data.empty()) req.data_csv = data;
    if (!model.empty()) req.model_file = model;
    if (!candidates.empty()) req.candidates_csv = candidates;
    if (!save.empty()) req.save_model = save;
    if (!grid.empty()) req.sweep_grid = grid;
    return run(req, out, err);
}

}  // namespace wisecrowd::cli
