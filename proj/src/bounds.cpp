#include "dabound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dabound/datagen.hpp"

namespace dabound {

CatoniConstants catoni_constants(double c, double alpha) {
    if (!(c > 0.0) || !(alpha > 0.0))
        throw ConfigError("catoni_constants: c and alpha must be > 0");
    // 1 - e^{-x} via expm1 keeps the x -> 0+ limit accurate.
    const double c_prime = c / (-std::expm1(-c));
    const double alpha_prime = 2.0 * alpha / (-std::expm1(-2.0 * alpha));
    return {c_prime, alpha_prime};
}

double kl_categorical(const Posterior& rho, const Posterior& pi) {
    if (rho.size() != pi.size())
        throw AlignmentError("kl_categorical: dimension mismatch");
    double kl = 0.0;
    for (std::size_t h = 0; h < rho.size(); ++h) {
        if (rho[h] == 0.0) continue;
        if (pi[h] == 0.0)
            throw ContinuityError("kl_categorical: rho puts mass on voter " +
                                  std::to_string(h) + " outside the prior's support");
        kl += rho[h] * std::log(rho[h] / pi[h]);
    }
    return kl;
}

void BoundConfig::validate() const {
    if (!(c > 0.0)) throw ConfigError("BoundConfig: c must be > 0");
    if (!(alpha > 0.0)) throw ConfigError("BoundConfig: alpha must be > 0");
    if (!(delta > 0.0) || delta > 1.0)
        throw ConfigError("BoundConfig: delta must lie in (0, 1]");
    if (m == 0) throw ConfigError("BoundConfig: m must be >= 1");
    if (lambda_mode == LambdaMode::Constant && lambda_value < 0.0)
        throw ConfigError("BoundConfig: constant lambda must be >= 0");
}

double BoundReport::term(const std::string& name) const {
    for (const auto& [n, v] : terms)
        if (n == name) return v;
    throw ConfigError("BoundReport: no term named '" + name + "'");
}

BoundReport bound_theorem2(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho) {
    BoundReport r;
    r.bound = "thm2";
    const double source_risk = gibbs_risk(source, voters, rho);
    const double dis = domain_disagreement(source, target, voters, rho);
    const double lambda = lambda_rho(source, target, voters, rho);
    r.terms = {{"source_gibbs_risk", source_risk},
               {"half_domain_disagreement", 0.5 * dis},
               {"lambda", lambda}};
    r.rhs = source_risk + 0.5 * dis + lambda;
    r.lambda_provenance = "exact";
    r.target_gibbs_risk = gibbs_risk(target, voters, rho);
    r.details["domain_disagreement"] = dis;
    return r;
}

BoundReport bound_theorem1(const FiniteDomain& source, const FiniteDomain& target,
                           const VoterMatrix& voters, const Posterior& rho) {
    BoundReport r;
    r.bound = "thm1";
    const double source_risk = gibbs_risk(source, voters, rho);
    const double dis = domain_disagreement(source, target, voters, rho);

    const Posterior rho_star = best_target_posterior(target, voters);
    const double star_risk = gibbs_risk(target, voters, rho_star);
    const double cross_t = cross_form(pair_disagreement(target, voters), rho, rho_star);
    const double cross_s = cross_form(pair_disagreement(source, voters), rho, rho_star);
    const double lambda_star = star_risk + cross_t + cross_s;

    r.terms = {{"source_gibbs_risk", source_risk},
               {"domain_disagreement", dis},
               {"lambda_star", lambda_star}};
    r.rhs = source_risk + dis + lambda_star;
    r.lambda_provenance = "exact";
    r.target_gibbs_risk = gibbs_risk(target, voters, rho);
    r.details["lambda_star_target_risk"] = star_risk;
    r.details["lambda_star_cross_target"] = cross_t;
    r.details["lambda_star_cross_source"] = cross_s;
    return r;
}

double prop4_lambda_bound(const FiniteDomain& source, const FiniteDomain& target,
                          const VoterMatrix& voters, const Posterior& rho) {
    const double chi2 = chi_squared(target, source);
    const double e_s = expected_joint_error(source, voters, rho);
    return std::sqrt(chi2 * e_s);
}

BoundReport bound_theorem3(const SamplePair& pair, const VoterMatrix& source_votes,
                           const VoterMatrix& target_votes, const Posterior& rho,
                           const Posterior& pi, const BoundConfig& config,
                           const LambdaInput& lambda) {
    config.validate();
    if (pair.source.size() != pair.target.size())
        throw ConfigError("bound_theorem3: source and target sample sizes differ (" +
                          std::to_string(pair.source.size()) + " vs " +
                          std::to_string(pair.target.size()) +
                          "); subsample to a common m first");
    if (pair.source.size() != config.m)
        throw ConfigError("bound_theorem3: config.m = " + std::to_string(config.m) +
                          " does not match the sample size " +
                          std::to_string(pair.source.size()));

    const auto [c_prime, alpha_prime] = catoni_constants(config.c, config.alpha);
    const double source_risk = empirical_gibbs_risk(pair.source, source_votes, rho);
    const double dis = empirical_domain_disagreement(pair, source_votes, target_votes, rho);
    const double kl = kl_categorical(rho, pi);
    const double complexity = (c_prime / config.c + alpha_prime / config.alpha) *
                              (kl + std::log(3.0 / config.delta)) /
                              static_cast<double>(config.m);

    double lambda_term = 0.0;
    std::string provenance;
    BoundReport r;
    switch (config.lambda_mode) {
        case LambdaMode::Exact: {
            if (!lambda.has_domains())
                throw ConfigError("bound_theorem3: exact lambda mode requires the true "
                                  "domains and their voter table");
            lambda_term = lambda_rho(*lambda.source, *lambda.target, *lambda.domain_votes, rho);
            provenance = "exact";
            break;
        }
        case LambdaMode::Prop4: {
            if (lambda.has_domains()) {
                lambda_term =
                    prop4_lambda_bound(*lambda.source, *lambda.target, *lambda.domain_votes, rho);
                r.details["chi_squared"] =
                    chi_squared(*lambda.target, *lambda.source);
                provenance = "prop4-exact";
            } else if (lambda.chi2.has_value()) {
                if (*lambda.chi2 < 0.0)
                    throw ConfigError("bound_theorem3: chi-squared constant must be >= 0");
                const double e_s = empirical_joint_error(pair.source, source_votes, rho);
                lambda_term = std::sqrt(*lambda.chi2 * e_s);
                r.details["chi_squared"] = *lambda.chi2;
                r.details["empirical_source_joint_error"] = e_s;
                provenance = "prop4-chi2";
            } else {
                throw ConfigError("bound_theorem3: prop4 lambda mode requires either the "
                                  "true domains or a chi-squared constant");
            }
            break;
        }
        case LambdaMode::Constant:
            lambda_term = config.lambda_value;
            provenance = "constant";
            break;
    }

    r.bound = "thm3";
    r.terms = {{"weighted_source_risk", c_prime * source_risk},
               {"weighted_half_disagreement", alpha_prime * 0.5 * dis},
               {"complexity", complexity},
               {"lambda", lambda_term},
               {"alpha_penalty", 0.5 * (alpha_prime - 1.0)}};
    r.rhs = c_prime * source_risk + alpha_prime * 0.5 * dis + complexity + lambda_term +
            0.5 * (alpha_prime - 1.0);
    r.lambda_provenance = provenance;
    if (lambda.has_domains())
        r.target_gibbs_risk = gibbs_risk(*lambda.target, *lambda.domain_votes, rho);
    r.details["c"] = config.c;
    r.details["alpha"] = config.alpha;
    r.details["delta"] = config.delta;
    r.details["m"] = static_cast<double>(config.m);
    r.details["c_prime"] = c_prime;
    r.details["alpha_prime"] = alpha_prime;
    r.details["kl"] = kl;
    r.details["empirical_source_risk"] = source_risk;
    r.details["empirical_disagreement"] = dis;
    return r;
}

CoverageResult verify_theorem3_coverage(const FiniteDomain& source,
                                        const FiniteDomain& target,
                                        const VoterMatrix& voters, const Posterior& pi,
                                        const BoundConfig& config, std::size_t trials,
                                        const std::vector<Posterior>& test_posteriors,
                                        std::uint64_t master_seed, unsigned threads) {
    config.validate();
    if (trials == 0) throw ConfigError("verify_theorem3_coverage: trials must be >= 1");
    if (test_posteriors.empty())
        throw ConfigError("verify_theorem3_coverage: need at least one test posterior");

    // True target risks are fixed across trials.
    std::vector<double> true_risks;
    true_risks.reserve(test_posteriors.size());
    for (const auto& rho : test_posteriors)
        true_risks.push_back(gibbs_risk(target, voters, rho));

    BoundConfig trial_config = config;
    trial_config.lambda_mode = LambdaMode::Exact;
    LambdaInput lambda;
    lambda.source = &source;
    lambda.target = &target;
    lambda.domain_votes = &voters;

    CoverageResult result;
    result.trials = trials;
    result.per_trial.resize(trials);

    auto run_trial = [&](std::size_t t) {
        TrialRecord rec;
        rec.seed = derive_seed(master_seed, t);
        Rng rng(rec.seed);
        const DomainDraw s_draw = draw_joint(source, config.m, rng);
        const std::vector<std::size_t> t_draw = draw_marginal(target, config.m, rng);

        const SamplePair pair(
            LabeledSample(draw_rows(source, s_draw.point_idx), s_draw.labels),
            UnlabeledSample(draw_rows(target, t_draw)));
        const VoterMatrix source_votes = gather_columns(voters, s_draw.point_idx);
        const VoterMatrix target_votes = gather_columns(voters, t_draw);

        rec.max_gap = -1.0;
        for (std::size_t k = 0; k < test_posteriors.size(); ++k) {
            const BoundReport report = bound_theorem3(pair, source_votes, target_votes,
                                                      test_posteriors[k], pi, trial_config,
                                                      lambda);
            const double gap = true_risks[k] - report.rhs;
            rec.max_gap = std::max(rec.max_gap, gap);
            if (gap > 0.0) rec.violated = true;
        }
        result.per_trial[t] = rec;
    };

    if (threads <= 1) {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        const unsigned workers =
            std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
        std::vector<std::thread> crew;
        for (unsigned w = 0; w < workers; ++w)
            crew.emplace_back([&, w] {
                for (std::size_t t = w; t < trials; t += workers) run_trial(t);
            });
        for (auto& th : crew) th.join();
    }

    for (const auto& rec : result.per_trial)
        if (rec.violated) ++result.violations;
    result.violation_rate =
        static_cast<double>(result.violations) / static_cast<double>(result.trials);
    return result;
}

} // namespace dabound
