// types.hpp — domain types shared by every module: finite domains over
// (point, label) atoms, sign tables of voters, and probability vectors
// over voters.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dabound {

// Error taxonomy. Every precondition failure maps to one of these.
struct AlignmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SupportError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ContinuityError : std::domain_error {
    using std::domain_error::domain_error;
};
struct BoundaryError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Probability vectors and pmfs must sum to 1 within this tolerance; they
// are renormalized exactly on construction.
inline constexpr double kNormalizationTol = 1e-9;

/**
 * A joint probability mass function over a finite point set crossed with
 * the label set {-1,+1}. Marginals over points are derivable. Points are
 * abstract string keys; each point may optionally carry a feature vector.
 *
 * Invariants enforced at construction: at least one point, all masses
 * >= 0, total mass 1 within kNormalizationTol (then renormalized exactly;
 * a drift above 1e-12 prints a warning to stderr).
 */
class FiniteDomain {
public:
    FiniteDomain(std::vector<std::string> points,
                 std::vector<double> mass_pos,
                 std::vector<double> mass_neg,
                 std::vector<std::vector<double>> features = {});

    std::size_t num_points() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<double>& mass_pos() const { return mass_pos_; }
    const std::vector<double>& mass_neg() const { return mass_neg_; }

    // Mass of the atom (point i, label). label must be -1 or +1.
    double mass(std::size_t i, int label) const {
        return label > 0 ? mass_pos_[i] : mass_neg_[i];
    }
    // Marginal mass of point i (both labels).
    double marginal(std::size_t i) const { return mass_pos_[i] + mass_neg_[i]; }

    bool has_features() const { return !features_.empty(); }
    const std::vector<std::vector<double>>& features() const { return features_; }

private:
    std::vector<std::string> points_;
    std::vector<double> mass_pos_;
    std::vector<double> mass_neg_;
    std::vector<std::vector<double>> features_;
};

/**
 * Evaluation table of n voters on a point list: n rows of entries in
 * {-1,+1}, column j aligned with point j of whichever domain or sample
 * the table was built against. At least one voter and one column.
 */
class VoterMatrix {
public:
    explicit VoterMatrix(std::vector<std::vector<int>> rows);

    std::size_t num_voters() const { return n_; }
    std::size_t num_points() const { return cols_; }
    int at(std::size_t voter, std::size_t point) const {
        return table_[voter * cols_ + point];
    }

private:
    std::size_t n_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int8_t> table_;
};

/**
 * A probability vector over n voters (a posterior, or a prior when used
 * as such). Non-negative, sums to 1 within kNormalizationTol, stored
 * renormalized.
 */
class Posterior {
public:
    explicit Posterior(std::vector<double> weights);

    static Posterior uniform(std::size_t n);
    static Posterior point_mass(std::size_t n, std::size_t index);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

// Dense square matrix, row-major. Used for pairwise disagreement and
// joint-error tables (always n_voters x n_voters).
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SquareMatrix(std::size_t n_voters) : n(n_voters), a(n_voters * n_voters, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

} // namespace dabound
