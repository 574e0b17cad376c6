#include "wisecrowd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wisecrowd::io {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (!trim(line).empty()) lines.push_back(line);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_number(std::string_view cell, double& out) {
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

JudgmentSample parse_judgment_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::ParseError, "CSV is empty");
    const auto header = split_fields(lines.front());

    std::ptrdiff_t criterion_col = -1;
    std::vector<std::size_t> judge_cols;
    JudgmentSample sample;
    std::set<std::string, std::less<>> seen;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "criterion") {
            if (criterion_col >= 0) throw Error(ErrorKind::DuplicateJudgeLabel, "duplicate 'criterion' column");
            criterion_col = static_cast<std::ptrdiff_t>(c);
            continue;
        }
        if (header[c].empty()) throw Error(ErrorKind::ParseError, "empty header in column " + std::to_string(c + 1));
        if (!seen.emplace(header[c]).second)
            throw Error(ErrorKind::DuplicateJudgeLabel, "judge label '" + std::string(header[c]) + "' repeats");
        judge_cols.push_back(c);
        sample.judge_labels.emplace_back(header[c]);
    }
    if (criterion_col < 0)
        throw Error(ErrorKind::MissingCriterionColumn, "no column named 'criterion' in the header");
    if (judge_cols.empty()) throw Error(ErrorKind::ZeroJudges, "CSV has no judge columns");

    const auto trials = static_cast<Eigen::Index>(lines.size() - 1);
    if (trials < 2)
        throw Error(ErrorKind::SampleTooSmall, "need at least 2 data rows, got " + std::to_string(trials));
    sample.judgments.resize(trials, static_cast<Eigen::Index>(judge_cols.size()));
    sample.criterion.resize(trials);

    for (Eigen::Index t = 0; t < trials; ++t) {
        const auto fields = split_fields(lines[static_cast<std::size_t>(t) + 1]);
        const auto row_no = std::to_string(t + 2);
        if (fields.size() != header.size())
            throw Error(ErrorKind::ParseError, "row " + row_no + " has " + std::to_string(fields.size()) +
                                                   " fields, header has " + std::to_string(header.size()));
        auto cell = [&](std::size_t c) {
            double v = 0.0;
            if (!parse_number(fields[c], v))
                throw Error(ErrorKind::NonNumericCell, "row " + row_no + ", column '" + std::string(header[c]) +
                                                           "': '" + std::string(fields[c]) + "' is not a number");
            return v;
        };
        sample.criterion[t] = cell(static_cast<std::size_t>(criterion_col));
        for (std::size_t j = 0; j < judge_cols.size(); ++j)
            sample.judgments(t, static_cast<Eigen::Index>(j)) = cell(judge_cols[j]);
    }
    return sample;
}

JudgmentSample ingest_csv(const std::filesystem::path& path) { return parse_judgment_csv(read_file(path)); }

std::string model_to_string(const CrowdModel& model) {
    const auto n = model.judge_means.size();
    json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["judge_labels"] = model.judge_labels.empty() ? default_labels(model.size()) : model.judge_labels;
    doc["judge_means"] = std::vector<double>(model.judge_means.data(), model.judge_means.data() + n);
    std::vector<double> cov;
    cov.reserve(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) cov.push_back(model.judge_cov(i, j));
    doc["judge_cov"] = cov;
    doc["criterion_mean"] = model.criterion_mean;
    doc["criterion_var"] = model.criterion_var;
    doc["cross_cov"] = std::vector<double>(model.cross_cov.data(), model.cross_cov.data() + n);
    return doc.dump(2) + "\n";
}

CrowdModel model_from_string(std::string_view text) {
    CrowdModel model;
    try {
        const json doc = json::parse(text);
        if (doc.contains("schema_version") && doc.at("schema_version").get<int>() != kModelSchemaVersion)
            throw Error(ErrorKind::ParseError,
                        "unsupported schema_version " + doc.at("schema_version").dump());
        const auto means = doc.at("judge_means").get<std::vector<double>>();
        const auto n = static_cast<Eigen::Index>(means.size());
        const auto cov = doc.at("judge_cov").get<std::vector<double>>();
        const auto cross = doc.at("cross_cov").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(cov.size()) != n * n)
            throw Error(ErrorKind::ParseError, "judge_cov must hold " + std::to_string(n * n) + " row-major entries");
        if (static_cast<Eigen::Index>(cross.size()) != n)
            throw Error(ErrorKind::ParseError, "cross_cov must hold " + std::to_string(n) + " entries");
        model.judge_means = Eigen::Map<const Eigen::VectorXd>(means.data(), n);
        model.judge_cov = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            cov.data(), n, n);
        model.cross_cov = Eigen::Map<const Eigen::VectorXd>(cross.data(), n);
        model.criterion_mean = doc.at("criterion_mean").get<double>();
        model.criterion_var = doc.at("criterion_var").get<double>();
        model.judge_labels = doc.contains("judge_labels") ? doc.at("judge_labels").get<std::vector<std::string>>()
                                                          : default_labels(static_cast<std::size_t>(n));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("model file: ") + e.what());
    }
    require_valid(model);
    return model;
}

void save_model(const CrowdModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << model_to_string(model);
}

CrowdModel load_model(const std::filesystem::path& path) { return model_from_string(read_file(path)); }

std::vector<CandidateMember> parse_candidates_csv(std::string_view text, const std::vector<std::string>& judge_labels) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::ParseError, "candidate CSV is empty");
    const auto header = split_fields(lines.front());
    const std::vector<std::string_view> fixed{"label", "mean", "variance", "cov_with_criterion"};
    bool ok = header.size() == fixed.size() + judge_labels.size();
    for (std::size_t c = 0; ok && c < header.size(); ++c)
        ok = header[c] == (c < fixed.size() ? fixed[c] : std::string_view(judge_labels[c - fixed.size()]));
    if (!ok) {
        std::string expected = "label,mean,variance,cov_with_criterion";
        for (const auto& l : judge_labels) expected += "," + l;
        throw Error(ErrorKind::ParseError, "candidate CSV header must be '" + expected + "'");
    }

    std::vector<CandidateMember> out;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        const auto row_no = std::to_string(r + 1);
        if (fields.size() != header.size())
            throw Error(ErrorKind::ParseError, "candidate row " + row_no + " has " + std::to_string(fields.size()) +
                                                   " fields, header has " + std::to_string(header.size()));
        auto cell = [&](std::size_t c) {
            double v = 0.0;
            if (!parse_number(fields[c], v))
                throw Error(ErrorKind::NonNumericCell, "candidate row " + row_no + ", column '" +
                                                           std::string(header[c]) + "': '" + std::string(fields[c]) +
                                                           "' is not a number");
            return v;
        };
        CandidateMember m;
        m.label = std::string(fields[0]);
        m.mean = cell(1);
        m.variance = cell(2);
        m.cov_with_criterion = cell(3);
        m.cov_with_members.resize(static_cast<Eigen::Index>(judge_labels.size()));
        for (std::size_t j = 0; j < judge_labels.size(); ++j)
            m.cov_with_members[static_cast<Eigen::Index>(j)] = cell(fixed.size() + j);
        out.push_back(std::move(m));
    }
    if (out.empty()) throw Error(ErrorKind::ParseError, "candidate CSV has no rows");
    return out;
}

std::vector<CandidateMember> read_candidates(const std::filesystem::path& path,
                                             const std::vector<std::string>& judge_labels) {
    return parse_candidates_csv(read_file(path), judge_labels);
}

Eigen::VectorXd read_vector(const std::filesystem::path& path) {
    std::string text = read_file(path);
    for (char& ch : text)
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        double v = 0.0;
        if (!parse_number(token, v))
            throw Error(ErrorKind::NonNumericCell, "'" + token + "' in '" + path.string() + "' is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw Error(ErrorKind::ParseError, "'" + path.string() + "' holds no numbers");
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace wisecrowd::io
