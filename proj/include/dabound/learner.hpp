// learner.hpp — minimizes the observable part of the thm3 right-hand side
// over the posterior simplex by exponentiated gradient descent (mirror
// descent in KL geometry; no projection needed, support is preserved).
#pragma once

#include "dabound/bounds.hpp"

namespace dabound {

struct LearnerConfig {
    double c = 1.0;
    double alpha = 1.0;
    double delta = 0.05;
    std::size_t m = 1;          // common sample size, as in BoundConfig
    double step_size = 0.1;     // base learning rate, halved on backtracking
    std::size_t max_iters = 1000;
    double tolerance = 1e-8;    // stop when the objective change drops below this
    LambdaMode lambda_mode = LambdaMode::Constant; // for the final report only
    double lambda_value = 0.0;

    void validate() const;
    BoundConfig bound_config() const;
};

// Observable objective: J(rho) = c' R_S(G_rho) + a' (1/2) dis(S,T)
//                              + (c'/c + a'/a) KL(rho||pi) / m.
// The rho-independent thm3 terms (lambda, the alpha' penalty) are omitted.
double objective(const SamplePair& pair, const VoterMatrix& source_votes,
                 const VoterMatrix& target_votes, const Posterior& rho,
                 const Posterior& pi, const LearnerConfig& config);

// Analytic gradient of the objective. Requires rho strictly inside the
// simplex (the KL gradient is undefined at 0); sign(0) of the
// disagreement kink is resolved to 0 (subgradient choice).
std::vector<double> gradient(const SamplePair& pair, const VoterMatrix& source_votes,
                             const VoterMatrix& target_votes, const Posterior& rho,
                             const Posterior& pi, const LearnerConfig& config);

struct TrainResult {
    Posterior posterior;
    std::vector<double> objective_trace; // accepted values, starting at J(pi)
    BoundReport report;                  // full thm3 report for the result
    std::size_t iterations = 0;          // accepted update steps
    std::string stop_reason;             // converged | max_iters | stalled
};

// Starts at rho = pi and iterates rho <- normalize(rho * exp(-eta g)).
// A step that increases the objective is retried with eta halved, up to
// 30 times; the accepted objective sequence is therefore non-increasing.
// Returns the best iterate by objective.
TrainResult train(const SamplePair& pair, const VoterMatrix& source_votes,
                  const VoterMatrix& target_votes, const Posterior& pi,
                  const LearnerConfig& config, const LambdaInput& lambda = {});

} // namespace dabound
