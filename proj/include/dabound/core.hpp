// core.hpp — exact evaluation of all risk, disagreement and joint-error
// quantities on finite domains with finite voter sets. Every expectation
// is a weighted sum or a quadratic form; there is no approximation.
#pragma once

#include "dabound/types.hpp"

namespace dabound {

// Per-voter 0-1 risks under the domain's joint pmf.
std::vector<double> voter_risks(const FiniteDomain& domain, const VoterMatrix& voters);

// Expected risk of the stochastic classifier that draws a voter from rho
// per prediction: sum_h rho(h) * risk(h).
double gibbs_risk(const FiniteDomain& domain, const VoterMatrix& voters,
                  const Posterior& rho);

// Risk of the deterministic rho-weighted vote x -> sign(sum_h rho(h) h(x)),
// with the tie rule sign(0) = +1.
double majority_vote_risk(const FiniteDomain& domain, const VoterMatrix& voters,
                          const Posterior& rho);

// Pairwise disagreement under the domain's marginal over points:
// entry (i,j) = sum_x D(x) * I[h_i(x) != h_j(x)]. Symmetric, zero diagonal.
SquareMatrix pair_disagreement(const FiniteDomain& domain, const VoterMatrix& voters);

// Pairwise joint error under the joint pmf:
// entry (i,j) = sum_{(x,y)} P(x,y) * I[h_i(x) != y] * I[h_j(x) != y].
// Symmetric; diagonal equals the per-voter risks.
SquareMatrix joint_error_matrix(const FiniteDomain& domain, const VoterMatrix& voters);

// rho' * M * rho for a matrix from pair_disagreement (or joint_error_matrix).
double expected_disagreement(const SquareMatrix& dis_matrix, const Posterior& rho);

// a' * M * b (cross quadratic form between two posteriors).
double cross_form(const SquareMatrix& matrix, const Posterior& a, const Posterior& b);

// rho' * E * rho with E the joint-error matrix of the domain.
double expected_joint_error(const FiniteDomain& domain, const VoterMatrix& voters,
                            const Posterior& rho);

// | rho'(M_S - M_T) rho | with M_S, M_T the pairwise-disagreement matrices
// under the source and target marginals. Depends on marginals only.
double domain_disagreement(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho);

// | e_T(rho) - e_S(rho) |, the deviation between expected joint errors.
double lambda_rho(const FiniteDomain& source, const FiniteDomain& target,
                  const VoterMatrix& voters, const Posterior& rho);

// Chi-squared divergence of target from source over (point,label) atoms:
// sum over the source support of P_S * (P_T/P_S - 1)^2. Both domains must
// share the same point list and the same support, else SupportError.
double chi_squared(const FiniteDomain& target, const FiniteDomain& source);

struct SupDistance {
    double sup = 0.0;  // sup over voter pairs of |R_T(h,h') - R_S(h,h')|
    double half = 0.0; // half of it
};

// Supremum-based disagreement divergence over all voter pairs; both the
// supremum and its half are reported.
SupDistance hdh_sup_distance(const FiniteDomain& source, const FiniteDomain& target,
                             const VoterMatrix& voters);

// Minimizer of the Gibbs risk on the target domain. The objective is
// linear in rho, so the result is the uniform distribution over the set of
// voters whose risk is within 1e-12 of the minimum.
Posterior best_target_posterior(const FiniteDomain& target, const VoterMatrix& voters);

} // namespace dabound
