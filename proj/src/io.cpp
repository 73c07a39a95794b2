#include "dabound/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dabound {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& message) {
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view token, const std::filesystem::path& path,
                    std::size_t line) {
    // from_chars rejects a leading '+', which we accept for labels.
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        parse_fail(path, line, "cannot parse '" + std::string(token) + "' as a number");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

} // namespace

json to_json(const FiniteDomain& domain) {
    json j;
    j["points"] = domain.points();
    json pmf = json::array();
    for (std::size_t i = 0; i < domain.num_points(); ++i) {
        if (domain.mass_pos()[i] != 0.0)
            pmf.push_back({domain.points()[i], 1, domain.mass_pos()[i]});
        if (domain.mass_neg()[i] != 0.0)
            pmf.push_back({domain.points()[i], -1, domain.mass_neg()[i]});
    }
    j["pmf"] = std::move(pmf);
    if (domain.has_features()) j["features"] = domain.features();
    return j;
}

FiniteDomain domain_from_json(const json& j) {
    if (!j.contains("points") || !j.contains("pmf"))
        throw ConfigError("domain JSON needs 'points' and 'pmf'");
    const auto points = j.at("points").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = i;
    if (index.size() != points.size())
        throw ConfigError("domain JSON: duplicate point identifiers");

    std::vector<double> pos(points.size(), 0.0), neg(points.size(), 0.0);
    std::set<std::pair<std::string, int>> seen;
    for (const auto& entry : j.at("pmf")) {
        if (!entry.is_array() || entry.size() != 3)
            throw ConfigError("domain JSON: pmf entries must be [point, label, mass]");
        const auto id = entry[0].get<std::string>();
        const int label = entry[1].get<int>();
        const double mass = entry[2].get<double>();
        const auto it = index.find(id);
        if (it == index.end())
            throw ConfigError("domain JSON: pmf references unknown point '" + id + "'");
        if (label != -1 && label != 1)
            throw ConfigError("domain JSON: label must be -1 or +1");
        if (!seen.insert({id, label}).second)
            throw ConfigError("domain JSON: duplicate pmf entry for ('" + id + "', " +
                              std::to_string(label) + ")");
        (label > 0 ? pos : neg)[it->second] = mass;
    }
    std::vector<std::vector<double>> features;
    if (j.contains("features"))
        features = j.at("features").get<std::vector<std::vector<double>>>();
    return FiniteDomain(points, std::move(pos), std::move(neg), std::move(features));
}

json to_json(const VoterMatrix& voters) {
    json table = json::array();
    for (std::size_t h = 0; h < voters.num_voters(); ++h) {
        json row = json::array();
        for (std::size_t x = 0; x < voters.num_points(); ++x) row.push_back(voters.at(h, x));
        table.push_back(std::move(row));
    }
    return json{{"n", voters.num_voters()}, {"table", std::move(table)}};
}

VoterMatrix voters_from_json(const json& j) {
    if (!j.contains("table")) throw ConfigError("voters JSON needs 'table'");
    auto rows = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
        throw ConfigError("voters JSON: 'n' does not match the table row count");
    return VoterMatrix(std::move(rows));
}

json to_json(const Posterior& rho) { return json{{"weights", rho.weights()}}; }

Posterior posterior_from_json(const json& j) {
    if (!j.contains("weights")) throw ConfigError("posterior JSON needs 'weights'");
    return Posterior(j.at("weights").get<std::vector<double>>());
}

json to_json(const BoundReport& report) {
    json terms = json::array();
    for (const auto& [name, value] : report.terms)
        terms.push_back({{"name", name}, {"value", value}});
    json j{{"bound", report.bound},
           {"terms", std::move(terms)},
           {"rhs", report.rhs},
           {"lambda_provenance", report.lambda_provenance},
           {"details", report.details}};
    if (report.target_gibbs_risk) j["target_gibbs_risk"] = *report.target_gibbs_risk;
    return j;
}

json to_json(const TrainResult& result) {
    return json{{"posterior", to_json(result.posterior)},
                {"objective_trace", result.objective_trace},
                {"iterations", result.iterations},
                {"stop_reason", result.stop_reason},
                {"report", to_json(result.report)}};
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
    std::vector<std::string> term_cols;
    std::set<std::string> term_seen, detail_cols;
    for (const auto& r : reports) {
        for (const auto& [name, value] : r.terms)
            if (term_seen.insert(name).second) term_cols.push_back(name);
        for (const auto& [name, value] : r.details) detail_cols.insert(name);
    }

    std::string out = "bound,rhs,lambda_provenance,target_gibbs_risk";
    for (const auto& c : term_cols) out += ",term:" + c;
    for (const auto& c : detail_cols) out += ",detail:" + c;
    out += "\n";

    for (const auto& r : reports) {
        out += r.bound + "," + fmt(r.rhs) + "," + r.lambda_provenance + ",";
        if (r.target_gibbs_risk) out += fmt(*r.target_gibbs_risk);
        for (const auto& c : term_cols) {
            out += ",";
            for (const auto& [name, value] : r.terms)
                if (name == c) {
                    out += fmt(value);
                    break;
                }
        }
        for (const auto& c : detail_cols) {
            out += ",";
            const auto it = r.details.find(c);
            if (it != r.details.end()) out += fmt(it->second);
        }
        out += "\n";
    }
    return out;
}

CsvSample read_sample_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file, header row required");
    ++lineno;
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty()) parse_fail(path, lineno, "empty header row");
    const bool labeled = header.back() == "label";
    const std::size_t d = header.size() - (labeled ? 1 : 0);
    if (d == 0) parse_fail(path, lineno, "no feature columns");

    CsvSample sample;
    if (labeled) sample.labels.emplace();
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            parse_fail(path, lineno,
                       "expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(cells.size()));
        std::vector<double> row(d);
        for (std::size_t c = 0; c < d; ++c) row[c] = parse_double(cells[c], path, lineno);
        sample.rows.push_back(std::move(row));
        if (labeled) {
            const double y = parse_double(cells[d], path, lineno);
            if (y != 1.0 && y != -1.0)
                parse_fail(path, lineno, "label must be -1 or +1, got '" + cells[d] + "'");
            sample.labels->push_back(static_cast<int>(y));
        }
    }
    if (sample.rows.empty()) throw ConfigError(path.string() + ": no data rows");
    return sample;
}

LabeledSample CsvSample::to_labeled(const std::string& what) const {
    if (!labeled())
        throw ConfigError(what + ": a labeled sample is required, but the file has no "
                                 "'label' column");
    return LabeledSample(rows, *labels);
}

UnlabeledSample CsvSample::to_unlabeled() const { return UnlabeledSample(rows); }

namespace {

void write_rows(std::ofstream& out, const std::vector<std::vector<double>>& rows,
                const std::vector<int>* labels) {
    const std::size_t d = rows.front().size();
    for (std::size_t c = 0; c < d; ++c) out << (c ? "," : "") << "x" << c;
    if (labels) out << ",label";
    out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < d; ++c) out << (c ? "," : "") << fmt(rows[i][c]);
        if (labels) out << "," << (*labels)[i];
        out << "\n";
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

void write_csv(const std::filesystem::path& path, const LabeledSample& sample) {
    auto out = open_out(path);
    write_rows(out, sample.rows(), &sample.labels());
}

void write_csv(const std::filesystem::path& path, const UnlabeledSample& sample) {
    auto out = open_out(path);
    write_rows(out, sample.rows(), nullptr);
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

} // namespace dabound
