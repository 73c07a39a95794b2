// io.hpp — serialization of the toolkit's types to the documented JSON
// shapes and CSV sample format. Parse errors carry file paths and line
// numbers.
#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "dabound/bounds.hpp"
#include "dabound/learner.hpp"

namespace dabound {

using json = nlohmann::json;

// FiniteDomain <-> {"points": [...], "pmf": [[point,label,mass],...],
//                   "features": [[...],...]?}  (zero-mass atoms omitted)
json to_json(const FiniteDomain& domain);
FiniteDomain domain_from_json(const json& j);

// VoterMatrix <-> {"n": N, "table": [[+-1,...],...]}
json to_json(const VoterMatrix& voters);
VoterMatrix voters_from_json(const json& j);

// Posterior <-> {"weights": [...]}
json to_json(const Posterior& rho);
Posterior posterior_from_json(const json& j);

json to_json(const BoundReport& report);
json to_json(const TrainResult& result);

// One CSV row per report; columns are the union of the reports' term and
// detail names, in first-seen term order and sorted detail order.
std::string reports_to_csv(const std::vector<BoundReport>& reports);

// CSV sample files: header row required; feature columns in order, and a
// final column named "label" (values in {-1,+1}) iff the sample is
// labeled.
struct CsvSample {
    std::vector<std::vector<double>> rows;
    std::optional<std::vector<int>> labels;

    bool labeled() const { return labels.has_value(); }
    LabeledSample to_labeled(const std::string& what) const;
    UnlabeledSample to_unlabeled() const;
};

CsvSample read_sample_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const LabeledSample& sample);
void write_csv(const std::filesystem::path& path, const UnlabeledSample& sample);

json load_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace dabound
