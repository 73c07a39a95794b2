#include "dabound/core.hpp"

#include <algorithm>
#include <cmath>

namespace dabound {

namespace {

void check_alignment(const FiniteDomain& domain, const VoterMatrix& voters) {
    if (voters.num_points() != domain.num_points())
        throw AlignmentError("voter table has " + std::to_string(voters.num_points()) +
                             " columns, domain has " + std::to_string(domain.num_points()) +
                             " points");
}

void check_rho(const VoterMatrix& voters, const Posterior& rho) {
    if (rho.size() != voters.num_voters())
        throw AlignmentError("posterior has " + std::to_string(rho.size()) +
                             " weights, voter table has " +
                             std::to_string(voters.num_voters()) + " voters");
}

void check_same_points(const FiniteDomain& a, const FiniteDomain& b) {
    if (a.points() != b.points())
        throw AlignmentError("domains are not over the same point universe");
}

} // namespace

std::vector<double> voter_risks(const FiniteDomain& domain, const VoterMatrix& voters) {
    check_alignment(domain, voters);
    std::vector<double> risks(voters.num_voters(), 0.0);
    for (std::size_t h = 0; h < voters.num_voters(); ++h) {
        double r = 0.0;
        for (std::size_t x = 0; x < domain.num_points(); ++x) {
            // h errs on (x,+1) iff it predicts -1 there, and vice versa.
            r += voters.at(h, x) < 0 ? domain.mass_pos()[x] : domain.mass_neg()[x];
        }
        risks[h] = r;
    }
    return risks;
}

double gibbs_risk(const FiniteDomain& domain, const VoterMatrix& voters,
                  const Posterior& rho) {
    check_rho(voters, rho);
    const std::vector<double> risks = voter_risks(domain, voters);
    double g = 0.0;
    for (std::size_t h = 0; h < risks.size(); ++h) g += rho[h] * risks[h];
    return g;
}

double majority_vote_risk(const FiniteDomain& domain, const VoterMatrix& voters,
                          const Posterior& rho) {
    check_alignment(domain, voters);
    check_rho(voters, rho);
    double risk = 0.0;
    for (std::size_t x = 0; x < domain.num_points(); ++x) {
        double margin = 0.0;
        for (std::size_t h = 0; h < voters.num_voters(); ++h)
            margin += rho[h] * static_cast<double>(voters.at(h, x));
        const int vote = margin >= 0.0 ? 1 : -1; // sign(0) = +1
        risk += vote > 0 ? domain.mass_neg()[x] : domain.mass_pos()[x];
    }
    return risk;
}

SquareMatrix pair_disagreement(const FiniteDomain& domain, const VoterMatrix& voters) {
    check_alignment(domain, voters);
    const std::size_t n = voters.num_voters();
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 0.0;
            for (std::size_t x = 0; x < domain.num_points(); ++x)
                if (voters.at(i, x) != voters.at(j, x)) d += domain.marginal(x);
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    }
    return m;
}

SquareMatrix joint_error_matrix(const FiniteDomain& domain, const VoterMatrix& voters) {
    check_alignment(domain, voters);
    const std::size_t n = voters.num_voters();
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double e = 0.0;
            for (std::size_t x = 0; x < domain.num_points(); ++x) {
                const bool i_neg = voters.at(i, x) < 0;
                const bool j_neg = voters.at(j, x) < 0;
                // Both err on (x,+1) iff both predict -1; on (x,-1) iff both +1.
                if (i_neg && j_neg) e += domain.mass_pos()[x];
                if (!i_neg && !j_neg) e += domain.mass_neg()[x];
            }
            m.at(i, j) = e;
            m.at(j, i) = e;
        }
    }
    return m;
}

double expected_disagreement(const SquareMatrix& dis_matrix, const Posterior& rho) {
    return cross_form(dis_matrix, rho, rho);
}

double cross_form(const SquareMatrix& matrix, const Posterior& a, const Posterior& b) {
    if (a.size() != matrix.n || b.size() != matrix.n)
        throw AlignmentError("posterior size does not match the matrix dimension");
    double q = 0.0;
    for (std::size_t i = 0; i < matrix.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < matrix.n; ++j) row += matrix.at(i, j) * b[j];
        q += a[i] * row;
    }
    return q;
}

double expected_joint_error(const FiniteDomain& domain, const VoterMatrix& voters,
                            const Posterior& rho) {
    check_rho(voters, rho);
    return expected_disagreement(joint_error_matrix(domain, voters), rho);
}

double domain_disagreement(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho) {
    check_rho(voters, rho);
    const double ds = expected_disagreement(pair_disagreement(source, voters), rho);
    const double dt = expected_disagreement(pair_disagreement(target, voters), rho);
    return std::fabs(ds - dt);
}

double lambda_rho(const FiniteDomain& source, const FiniteDomain& target,
                  const VoterMatrix& voters, const Posterior& rho) {
    check_rho(voters, rho);
    const double es = expected_joint_error(source, voters, rho);
    const double et = expected_joint_error(target, voters, rho);
    return std::fabs(et - es);
}

double chi_squared(const FiniteDomain& target, const FiniteDomain& source) {
    check_same_points(source, target);
    double chi2 = 0.0;
    for (std::size_t x = 0; x < source.num_points(); ++x) {
        for (int label : {+1, -1}) {
            const double ps = source.mass(x, label);
            const double pt = target.mass(x, label);
            if ((ps > 0.0) != (pt > 0.0))
                throw SupportError("chi_squared: domains do not share the same support at ('" +
                                   source.points()[x] + "', " + std::to_string(label) + ")");
            if (ps > 0.0) {
                const double ratio = pt / ps - 1.0;
                chi2 += ps * ratio * ratio;
            }
        }
    }
    return chi2;
}

SupDistance hdh_sup_distance(const FiniteDomain& source, const FiniteDomain& target,
                             const VoterMatrix& voters) {
    const SquareMatrix ms = pair_disagreement(source, voters);
    const SquareMatrix mt = pair_disagreement(target, voters);
    double sup = 0.0;
    for (std::size_t i = 0; i < ms.n; ++i)
        for (std::size_t j = 0; j < ms.n; ++j)
            sup = std::max(sup, std::fabs(mt.at(i, j) - ms.at(i, j)));
    return {sup, 0.5 * sup};
}

Posterior best_target_posterior(const FiniteDomain& target, const VoterMatrix& voters) {
    const std::vector<double> risks = voter_risks(target, voters);
    const double best = *std::min_element(risks.begin(), risks.end());
    std::vector<double> w(risks.size(), 0.0);
    std::size_t ties = 0;
    for (std::size_t h = 0; h < risks.size(); ++h)
        if (risks[h] <= best + 1e-12) ++ties;
    for (std::size_t h = 0; h < risks.size(); ++h)
        if (risks[h] <= best + 1e-12) w[h] = 1.0 / static_cast<double>(ties);
    return Posterior(std::move(w));
}

} // namespace dabound
