#include "dabound/estimators.hpp"

#include <cmath>

namespace dabound {

namespace {

void check_rows(const std::vector<std::vector<double>>& rows, const char* what) {
    if (rows.empty()) throw ConfigError(std::string(what) + ": empty sample");
    const std::size_t d = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != d)
            throw ConfigError(std::string(what) + ": inconsistent feature dimensions");
}

std::vector<std::string> row_ids(std::size_t m) {
    std::vector<std::string> ids;
    ids.reserve(m);
    for (std::size_t i = 0; i < m; ++i) ids.push_back("r" + std::to_string(i));
    return ids;
}

} // namespace

LabeledSample::LabeledSample(std::vector<std::vector<double>> rows, std::vector<int> labels)
    : rows_(std::move(rows)), labels_(std::move(labels)) {
    check_rows(rows_, "LabeledSample");
    if (labels_.size() != rows_.size())
        throw ConfigError("LabeledSample: label count does not match row count");
    for (int y : labels_)
        if (y != -1 && y != 1) throw ConfigError("LabeledSample: labels must be -1 or +1");
}

UnlabeledSample::UnlabeledSample(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
    check_rows(rows_, "UnlabeledSample");
}

SamplePair::SamplePair(LabeledSample src, UnlabeledSample tgt)
    : source(std::move(src)), target(std::move(tgt)) {
    if (source.dim() != target.dim())
        throw ConfigError("SamplePair: source and target feature dimensions differ");
}

VoterMatrix evaluate_voters(const std::vector<std::vector<double>>& rows,
                            const VoterPool& pool) {
    if (pool.size() == 0) throw ConfigError("evaluate_voters: empty voter pool");
    check_rows(rows, "evaluate_voters");
    std::vector<std::vector<int>> table(pool.size(), std::vector<int>(rows.size()));
    for (std::size_t h = 0; h < pool.size(); ++h) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const int p = pool.predict(h, std::span<const double>(rows[i]));
            if (p != -1 && p != 1)
                throw ConfigError("evaluate_voters: voter " + std::to_string(h) +
                                  " returned " + std::to_string(p) +
                                  ", outside {-1,+1}");
            table[h][i] = p;
        }
    }
    return VoterMatrix(std::move(table));
}

FiniteDomain empirical_domain(const LabeledSample& sample) {
    const std::size_t m = sample.size();
    const double w = 1.0 / static_cast<double>(m);
    std::vector<double> pos(m, 0.0), neg(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) (sample.labels()[i] > 0 ? pos[i] : neg[i]) = w;
    return FiniteDomain(row_ids(m), std::move(pos), std::move(neg), sample.rows());
}

FiniteDomain empirical_domain(const UnlabeledSample& sample) {
    const std::size_t m = sample.size();
    std::vector<double> pos(m, 1.0 / static_cast<double>(m));
    std::vector<double> neg(m, 0.0);
    return FiniteDomain(row_ids(m), std::move(pos), std::move(neg), sample.rows());
}

double empirical_gibbs_risk(const LabeledSample& sample, const VoterMatrix& voters,
                            const Posterior& rho) {
    return gibbs_risk(empirical_domain(sample), voters, rho);
}

double empirical_joint_error(const LabeledSample& sample, const VoterMatrix& voters,
                             const Posterior& rho) {
    return expected_joint_error(empirical_domain(sample), voters, rho);
}

double empirical_domain_disagreement(const SamplePair& pair,
                                     const VoterMatrix& source_votes,
                                     const VoterMatrix& target_votes,
                                     const Posterior& rho) {
    if (source_votes.num_voters() != target_votes.num_voters())
        throw AlignmentError("voter tables disagree on the voter count");
    return std::fabs(
        expected_disagreement(pair_disagreement(empirical_domain(pair.source), source_votes),
                              rho) -
        expected_disagreement(pair_disagreement(empirical_domain(pair.target), target_votes),
                              rho));
}

} // namespace dabound
