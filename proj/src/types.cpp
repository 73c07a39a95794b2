#include "dabound/types.hpp"

#include <cmath>
#include <cstdio>

namespace dabound {

namespace {

// Validates non-negativity and normalization, renormalizes exactly.
// `what` names the object in error messages.
void normalize_pmf(std::vector<double>& masses, const char* what) {
    double sum = 0.0;
    for (double m : masses) {
        if (m < 0.0 || !std::isfinite(m))
            throw ConfigError(std::string(what) + ": negative or non-finite mass");
        sum += m;
    }
    if (std::fabs(sum - 1.0) > kNormalizationTol)
        throw ConfigError(std::string(what) + ": masses sum to " + std::to_string(sum) +
                          ", outside the 1e-9 normalization tolerance");
    if (std::fabs(sum - 1.0) > 1e-12)
        std::fprintf(stderr, "warning: %s renormalized, mass drift %.3e\n", what,
                     sum - 1.0);
    for (double& m : masses) m /= sum;
}

} // namespace

FiniteDomain::FiniteDomain(std::vector<std::string> points,
                           std::vector<double> mass_pos,
                           std::vector<double> mass_neg,
                           std::vector<std::vector<double>> features)
    : points_(std::move(points)),
      mass_pos_(std::move(mass_pos)),
      mass_neg_(std::move(mass_neg)),
      features_(std::move(features)) {
    if (points_.empty()) throw ConfigError("FiniteDomain: empty point set");
    if (mass_pos_.size() != points_.size() || mass_neg_.size() != points_.size())
        throw ConfigError("FiniteDomain: mass vectors must match the point count");
    if (!features_.empty() && features_.size() != points_.size())
        throw ConfigError("FiniteDomain: feature list must match the point count");
    if (!features_.empty()) {
        const std::size_t d = features_.front().size();
        for (const auto& f : features_)
            if (f.size() != d)
                throw ConfigError("FiniteDomain: inconsistent feature dimensions");
    }

    // Joint normalization over all 2*|points| atoms.
    std::vector<double> joint;
    joint.reserve(2 * points_.size());
    joint.insert(joint.end(), mass_pos_.begin(), mass_pos_.end());
    joint.insert(joint.end(), mass_neg_.begin(), mass_neg_.end());
    normalize_pmf(joint, "FiniteDomain pmf");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        mass_pos_[i] = joint[i];
        mass_neg_[i] = joint[points_.size() + i];
    }
}

VoterMatrix::VoterMatrix(std::vector<std::vector<int>> rows) {
    if (rows.empty()) throw ConfigError("VoterMatrix: empty voter set");
    n_ = rows.size();
    cols_ = rows.front().size();
    if (cols_ == 0) throw ConfigError("VoterMatrix: empty point list");
    table_.reserve(n_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw ConfigError("VoterMatrix: ragged rows");
        for (int v : row) {
            if (v != -1 && v != 1)
                throw ConfigError("VoterMatrix: entries must be -1 or +1");
            table_.push_back(static_cast<std::int8_t>(v));
        }
    }
}

Posterior::Posterior(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw ConfigError("Posterior: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (w < 0.0 || !std::isfinite(w))
            throw ConfigError("Posterior: negative or non-finite weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kNormalizationTol)
        throw ConfigError("Posterior: weights sum to " + std::to_string(sum) +
                          ", outside the 1e-9 normalization tolerance");
    for (double& w : weights_) w /= sum;
}

Posterior Posterior::uniform(std::size_t n) {
    if (n == 0) throw ConfigError("Posterior: empty weight vector");
    return Posterior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Posterior Posterior::point_mass(std::size_t n, std::size_t index) {
    if (index >= n) throw ConfigError("Posterior: point mass index out of range");
    std::vector<double> w(n, 0.0);
    w[index] = 1.0;
    return Posterior(std::move(w));
}

} // namespace dabound
