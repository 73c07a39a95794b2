#include "dabound/learner.hpp"

#include <algorithm>
#include <cmath>

namespace dabound {

void LearnerConfig::validate() const {
    bound_config().validate();
    if (!(step_size > 0.0)) throw ConfigError("LearnerConfig: step_size must be > 0");
    if (max_iters == 0) throw ConfigError("LearnerConfig: max_iters must be >= 1");
    if (!(tolerance > 0.0)) throw ConfigError("LearnerConfig: tolerance must be > 0");
}

BoundConfig LearnerConfig::bound_config() const {
    BoundConfig b;
    b.c = c;
    b.alpha = alpha;
    b.delta = delta;
    b.m = m;
    b.lambda_mode = lambda_mode;
    b.lambda_value = lambda_value;
    return b;
}

namespace {

// Fixed per-instance data of the objective: per-voter empirical source
// risks, the difference of the two disagreement matrices, and the scalar
// weights of the three terms.
struct ObjectiveData {
    std::vector<double> risks;
    SquareMatrix delta_dis;
    double c_prime = 0.0;
    double alpha_prime = 0.0;
    double kl_weight = 0.0;

    ObjectiveData(const SamplePair& pair, const VoterMatrix& source_votes,
                  const VoterMatrix& target_votes, const LearnerConfig& config)
        : risks(voter_risks(empirical_domain(pair.source), source_votes)),
          delta_dis(source_votes.num_voters()) {
        config.validate();
        if (pair.source.size() != pair.target.size() || pair.source.size() != config.m)
            throw ConfigError("learner: source and target sample sizes must both equal "
                              "config.m");
        if (source_votes.num_voters() != target_votes.num_voters())
            throw AlignmentError("learner: voter tables disagree on the voter count");
        const SquareMatrix ms = pair_disagreement(empirical_domain(pair.source), source_votes);
        const SquareMatrix mt = pair_disagreement(empirical_domain(pair.target), target_votes);
        for (std::size_t i = 0; i < delta_dis.n; ++i)
            for (std::size_t j = 0; j < delta_dis.n; ++j)
                delta_dis.at(i, j) = ms.at(i, j) - mt.at(i, j);
        const auto [cp, ap] = catoni_constants(config.c, config.alpha);
        c_prime = cp;
        alpha_prime = ap;
        kl_weight = (cp / config.c + ap / config.alpha) / static_cast<double>(config.m);
    }

    std::size_t n() const { return risks.size(); }

    double signed_dis(const std::vector<double>& w) const {
        double q = 0.0;
        for (std::size_t i = 0; i < delta_dis.n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < delta_dis.n; ++j) row += delta_dis.at(i, j) * w[j];
            q += w[i] * row;
        }
        return q;
    }

    double eval(const std::vector<double>& w, const Posterior& pi) const {
        double risk = 0.0;
        for (std::size_t h = 0; h < n(); ++h) risk += w[h] * risks[h];
        double kl = 0.0;
        for (std::size_t h = 0; h < n(); ++h) {
            if (w[h] == 0.0) continue;
            if (pi[h] == 0.0)
                throw ContinuityError("learner: posterior leaves the prior's support");
            kl += w[h] * std::log(w[h] / pi[h]);
        }
        return c_prime * risk + alpha_prime * 0.5 * std::fabs(signed_dis(w)) +
               kl_weight * kl;
    }

    std::vector<double> grad(const std::vector<double>& w, const Posterior& pi) const {
        for (std::size_t h = 0; h < n(); ++h)
            if (w[h] <= 0.0)
                throw BoundaryError("learner: gradient undefined on the simplex boundary");
        const double q = this->signed_dis(w);
        const double sgn = q > 0.0 ? 1.0 : (q < 0.0 ? -1.0 : 0.0);
        std::vector<double> g(n());
        for (std::size_t i = 0; i < n(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n(); ++j) row += delta_dis.at(i, j) * w[j];
            g[i] = c_prime * risks[i] + alpha_prime * sgn * row +
                   kl_weight * (std::log(w[i] / pi[i]) + 1.0);
        }
        return g;
    }
};

// Multiplicative update in log space; the max-shift keeps exp() away from
// overflow and the renormalization exact.
std::vector<double> eg_step(const std::vector<double>& w, const std::vector<double>& g,
                            double eta) {
    std::vector<double> logw(w.size());
    double top = -HUGE_VAL;
    for (std::size_t i = 0; i < w.size(); ++i) {
        logw[i] = std::log(w[i]) - eta * g[i];
        top = std::max(top, logw[i]);
    }
    std::vector<double> out(w.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += (out[i] = std::exp(logw[i] - top));
    for (double& x : out) x /= sum;
    return out;
}

} // namespace

double objective(const SamplePair& pair, const VoterMatrix& source_votes,
                 const VoterMatrix& target_votes, const Posterior& rho,
                 const Posterior& pi, const LearnerConfig& config) {
    const ObjectiveData data(pair, source_votes, target_votes, config);
    if (rho.size() != data.n() || pi.size() != data.n())
        throw AlignmentError("objective: posterior size does not match the voter count");
    return data.eval(rho.weights(), pi);
}

std::vector<double> gradient(const SamplePair& pair, const VoterMatrix& source_votes,
                             const VoterMatrix& target_votes, const Posterior& rho,
                             const Posterior& pi, const LearnerConfig& config) {
    const ObjectiveData data(pair, source_votes, target_votes, config);
    if (rho.size() != data.n() || pi.size() != data.n())
        throw AlignmentError("gradient: posterior size does not match the voter count");
    return data.grad(rho.weights(), pi);
}

TrainResult train(const SamplePair& pair, const VoterMatrix& source_votes,
                  const VoterMatrix& target_votes, const Posterior& pi,
                  const LearnerConfig& config, const LambdaInput& lambda) {
    const ObjectiveData data(pair, source_votes, target_votes, config);
    if (pi.size() != data.n())
        throw AlignmentError("train: prior size does not match the voter count");
    for (std::size_t h = 0; h < pi.size(); ++h)
        if (pi[h] <= 0.0)
            throw ConfigError("train: the prior must be strictly positive");

    std::vector<double> current = pi.weights();
    double j_current = data.eval(current, pi);
    std::vector<double> trace{j_current};
    std::vector<double> best = current;
    double j_best = j_current;

    std::size_t iterations = 0;
    std::string stop_reason = "max_iters";
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        const std::vector<double> g = data.grad(current, pi);

        double eta = config.step_size;
        std::vector<double> candidate;
        double j_candidate = 0.0;
        bool accepted = false;
        for (int halvings = 0; halvings <= 30; ++halvings) {
            candidate = eg_step(current, g, eta);
            j_candidate = data.eval(candidate, pi);
            if (j_candidate <= j_current) {
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) {
            stop_reason = "stalled";
            break;
        }

        const double change = j_current - j_candidate;
        current = std::move(candidate);
        j_current = j_candidate;
        trace.push_back(j_current);
        iterations = iter;
        if (j_current < j_best) {
            j_best = j_current;
            best = current;
        }
        if (change < config.tolerance) {
            stop_reason = "converged";
            break;
        }
    }

    Posterior posterior(best);
    BoundReport report = bound_theorem3(pair, source_votes, target_votes, posterior, pi,
                                        config.bound_config(), lambda);
    report.details["objective"] = j_best;
    return {std::move(posterior), std::move(trace), std::move(report), iterations,
            std::move(stop_reason)};
}

} // namespace dabound
