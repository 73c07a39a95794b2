// estimators.hpp — empirical counterparts of the exact quantities,
// computed from a labeled source sample and an unlabeled target sample.
// Each estimator builds the uniform empirical domain over the sample rows
// and delegates to core, so empirical correctness reduces to exact
// correctness.
#pragma once

#include <span>

#include "dabound/core.hpp"

namespace dabound {

/// Labeled sample: rows of (feature vector, label in {-1,+1}).
class LabeledSample {
public:
    LabeledSample(std::vector<std::vector<double>> rows, std::vector<int> labels);

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return rows_.front().size(); }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::vector<int>& labels() const { return labels_; }

private:
    std::vector<std::vector<double>> rows_;
    std::vector<int> labels_;
};

/// Unlabeled sample: rows of feature vectors.
class UnlabeledSample {
public:
    explicit UnlabeledSample(std::vector<std::vector<double>> rows);

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return rows_.front().size(); }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

private:
    std::vector<std::vector<double>> rows_;
};

/// A labeled source sample together with an unlabeled target sample of the
/// same feature dimension. Sizes may differ.
struct SamplePair {
    LabeledSample source;
    UnlabeledSample target;

    SamplePair(LabeledSample src, UnlabeledSample tgt);
};

/// Abstract pool of deterministic binary voters over feature vectors.
class VoterPool {
public:
    virtual ~VoterPool() = default;
    virtual std::size_t size() const = 0;
    virtual int predict(std::size_t voter, std::span<const double> x) const = 0;
};

// Sign matrix of every pool voter on every row, aligned with row order.
// A voter returning anything outside {-1,+1} is a contract violation.
VoterMatrix evaluate_voters(const std::vector<std::vector<double>>& rows,
                            const VoterPool& pool);

// Uniform empirical domain: mass 1/m on each (row, label) atom. Row i
// becomes the pseudo-point "r<i>"; features are carried over.
FiniteDomain empirical_domain(const LabeledSample& sample);

// Marginal carrier for an unlabeled sample: mass 1/m per row, parked on
// the +1 label (only the marginal over points is ever used).
FiniteDomain empirical_domain(const UnlabeledSample& sample);

// (1/m) sum_i sum_h rho(h) I[h(x_i) != y_i].
double empirical_gibbs_risk(const LabeledSample& sample, const VoterMatrix& voters,
                            const Posterior& rho);

// Quadratic form on the empirical joint-error matrix of the source sample.
double empirical_joint_error(const LabeledSample& sample, const VoterMatrix& voters,
                             const Posterior& rho);

// | rho'(M_S - M_T) rho | with empirical pairwise-disagreement matrices.
// The voter tables must be evaluated on the pair's source and target rows.
double empirical_domain_disagreement(const SamplePair& pair,
                                     const VoterMatrix& source_votes,
                                     const VoterMatrix& target_votes,
                                     const Posterior& rho);

} // namespace dabound
