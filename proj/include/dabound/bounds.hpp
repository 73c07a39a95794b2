// bounds.hpp — term-by-term evaluators for the three adaptation bounds
// handled by this toolkit:
//   thm1: source risk + dis + lambda_star(rho, best target posterior)
//   thm2: source risk + dis/2 + lambda(rho)
//   thm3: PAC-Bayesian sample bound with Catoni constants c', alpha'
// plus the chi-squared surrogate for the lambda term and a Monte Carlo
// coverage checker for thm3.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dabound/estimators.hpp"

namespace dabound {

struct CatoniConstants {
    double c_prime = 0.0;     // c / (1 - e^{-c})
    double alpha_prime = 0.0; // 2a / (1 - e^{-2a})
};

// Both constants are > 1 for positive arguments; non-positive input is a
// ConfigError.
CatoniConstants catoni_constants(double c, double alpha);

// sum_h rho(h) ln(rho(h)/pi(h)) with 0 ln(0/.) = 0. rho(h) > 0 where
// pi(h) = 0 is a ContinuityError.
double kl_categorical(const Posterior& rho, const Posterior& pi);

enum class LambdaMode { Exact, Prop4, Constant };

inline const char* lambda_mode_name(LambdaMode m) {
    switch (m) {
        case LambdaMode::Exact: return "exact";
        case LambdaMode::Prop4: return "prop4";
        case LambdaMode::Constant: return "constant";
    }
    return "?";
}

struct BoundConfig {
    double c = 1.0;
    double alpha = 1.0;
    double delta = 0.05;
    std::size_t m = 1; // common source/target sample size
    LambdaMode lambda_mode = LambdaMode::Constant;
    double lambda_value = 0.0; // Constant mode only

    void validate() const;
};

// Optional inputs for the lambda term of thm3. Exact mode needs the true
// domains and a voter table aligned with them; Prop4 uses them for an
// exact chi-squared (and exact joint error), or falls back to a supplied
// chi-squared constant combined with the empirical source joint error.
struct LambdaInput {
    const FiniteDomain* source = nullptr;
    const FiniteDomain* target = nullptr;
    const VoterMatrix* domain_votes = nullptr;
    std::optional<double> chi2 = {};

    bool has_domains() const { return source && target && domain_votes; }
};

/// Term-by-term record of one bound evaluation. `rhs` is always the sum
/// of `terms` in order; everything informative but non-additive lives in
/// `details`.
struct BoundReport {
    std::string bound; // "thm1" | "thm2" | "thm3"
    std::vector<std::pair<std::string, double>> terms;
    double rhs = 0.0;
    std::string lambda_provenance; // exact | prop4-exact | prop4-chi2 | constant
    std::optional<double> target_gibbs_risk; // true value when domains are known
    std::map<std::string, double> details;

    double term(const std::string& name) const;
};

// Exact-path evaluators on known domains.
BoundReport bound_theorem2(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho);
BoundReport bound_theorem1(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho);

// sqrt(chi2(target||source) * e_source(rho)); SupportError propagates
// from chi_squared.
double prop4_lambda_bound(const FiniteDomain& source, const FiniteDomain& target,
                          const VoterMatrix& voters, const Posterior& rho);

// Empirical-path evaluator. Requires m_source = m_target = config.m; the
// voter tables must be evaluated on the pair's rows.
BoundReport bound_theorem3(const SamplePair& pair, const VoterMatrix& source_votes,
                           const VoterMatrix& target_votes, const Posterior& rho,
                           const Posterior& pi, const BoundConfig& config,
                           const LambdaInput& lambda = {});

struct TrialRecord {
    std::uint64_t seed = 0;
    bool violated = false;
    double max_gap = 0.0; // max over posteriors of (true risk - rhs)
};

struct CoverageResult {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double violation_rate = 0.0;
    std::vector<TrialRecord> per_trial;
};

// Monte Carlo check of the thm3 statement on known domains: per trial,
// draw S ~ P_S^m and T ~ D_T^m, evaluate the bound with the exact lambda
// for every test posterior, and flag the trial if ANY posterior has true
// target Gibbs risk above the bound (the statement is simultaneous over
// rho). Per-trial seeds are derived from the master seed by counter, so
// the result is bitwise independent of the thread count.
CoverageResult verify_theorem3_coverage(const FiniteDomain& source,
                                        const FiniteDomain& target,
                                        const VoterMatrix& voters, const Posterior& pi,
                                        const BoundConfig& config, std::size_t trials,
                                        const std::vector<Posterior>& test_posteriors,
                                        std::uint64_t master_seed, unsigned threads = 1);

} // namespace dabound
