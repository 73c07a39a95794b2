// datagen.hpp — generators for random finite verification instances,
// controllable-divergence domain pairs, synthetic adaptation tasks, and
// decision-stump voter pools. All generators are pure functions of
// (spec, seed): identical inputs give bitwise-identical outputs.
#pragma once

#include <cstdint>
#include <utility>

#include "dabound/estimators.hpp"
#include "dabound/rng.hpp"

namespace dabound {

enum class DatasetKind { RandomFinite, Chi2Perturbed, RotatedMoons, LabelFlip };

struct DatasetSpec {
    DatasetKind kind = DatasetKind::RandomFinite;
    std::size_t points = 4;        // random_finite, chi2_perturbed, label_flip
    std::size_t voters = 3;        // random_finite
    double dirichlet_conc = 1.0;   // concentration for random domains/posteriors
    double magnitude = 0.1;        // chi2_perturbed
    double flip_rate = 0.2;        // label_flip, in [0, 1/2]
    double angle_deg = 0.0;        // rotated_moons, in [0, 180)
    double noise = 0.05;           // rotated_moons coordinate noise sigma
    std::size_t m_source = 100;    // rotated_moons sample sizes
    std::size_t m_target = 100;

    void validate() const;
};

// --- random primitives over domains and posteriors ---

// Symmetric Dirichlet(conc) draw over the 2*|points| atoms.
FiniteDomain random_domain(std::size_t points, double conc, Rng& rng);

// Symmetric Dirichlet(conc) draw over n voters.
Posterior random_posterior(std::size_t n, double conc, Rng& rng);

// Uniform +-1 voter table.
VoterMatrix random_voters(std::size_t n, std::size_t points, Rng& rng);

struct FiniteInstance {
    FiniteDomain source;
    FiniteDomain target;
    VoterMatrix voters;
    Posterior rho;
};

// Full verification instance: independent Dirichlet source/target over a
// shared point universe, random voters, random posterior.
FiniteInstance random_finite_instance(const DatasetSpec& spec, std::uint64_t seed);

// --- controllable-divergence pairs ---

struct PerturbedPair {
    FiniteDomain source;
    FiniteDomain target;
    double chi2 = 0.0; // exact chi-squared of target from source
};

// Target = base plus a mean-zero random mass perturbation of the given
// magnitude, renormalized. Base must have strictly positive masses;
// a magnitude that drives any mass to zero or below is a SupportError.
PerturbedPair chi2_perturbed_pair(const FiniteDomain& base, double magnitude,
                                  std::uint64_t seed);

// Target = base with a fraction `rate` of each atom's mass moved to the
// opposite label. Marginals are untouched; only the labeling shifts.
std::pair<FiniteDomain, FiniteDomain> label_flip_pair(const FiniteDomain& base,
                                                      double rate);

// --- synthetic adaptation task ---

struct MoonsData {
    SamplePair pair;            // labeled source + unlabeled target
    LabeledSample target_heldout; // evaluation-only labeled target rows
};

// Two interleaved unit-radius half-circles in d=2 (second moon flipped,
// bounding box offset by (1,-0.5)), Gaussian coordinate noise, target
// distribution rotated about the origin by angle_deg. The held-out rows
// are a fresh labeled draw from the target distribution and never enter
// the SamplePair.
MoonsData rotated_moons(std::size_t m_source, std::size_t m_target, double angle_deg,
                        double noise, std::uint64_t seed);

// --- decision-stump voter pool ---

/// Pool of axis-aligned threshold voters x -> s * sign(x[j] - theta) with
/// sign(0) = +1. Stumps are generated in polarity pairs: consecutive
/// entries share (j, theta) and differ in s, so the pool always carries
/// both polarities of every threshold it contains.
class StumpPool final : public VoterPool {
public:
    struct Stump {
        std::size_t feature = 0;
        double threshold = 0.0;
        int polarity = 1;
    };

    // Thresholds are placed at uniformly drawn quantiles of a uniformly
    // drawn coordinate over the provided rows. Deterministic per seed.
    static StumpPool build(const std::vector<std::vector<double>>& rows,
                           std::size_t count, std::uint64_t seed);

    std::size_t size() const override { return stumps_.size(); }
    int predict(std::size_t voter, std::span<const double> x) const override;
    const std::vector<Stump>& stumps() const { return stumps_; }

private:
    std::vector<Stump> stumps_;
};

// --- i.i.d. samples from a known finite domain ---

struct DomainDraw {
    std::vector<std::size_t> point_idx;
    std::vector<int> labels;
};

// m i.i.d. draws of (point, label) atoms from the joint pmf.
DomainDraw draw_joint(const FiniteDomain& domain, std::size_t m, Rng& rng);

// m i.i.d. draws of points from the marginal over points.
std::vector<std::size_t> draw_marginal(const FiniteDomain& domain, std::size_t m,
                                       Rng& rng);

// Voter table on a drawn sample: column k is the domain table's column
// at the k-th drawn point.
VoterMatrix gather_columns(const VoterMatrix& voters,
                           const std::vector<std::size_t>& point_idx);

// Sample rows for a draw: the domain's feature vectors when present,
// otherwise the 1-d feature [point index].
std::vector<std::vector<double>> draw_rows(const FiniteDomain& domain,
                                           const std::vector<std::size_t>& point_idx);

} // namespace dabound
