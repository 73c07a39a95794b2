#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dabound/datagen.hpp"
#include "dabound/estimators.hpp"
#include "oracle.hpp"

using namespace dabound;

namespace {

// Fixed pool used in several cases: always+1, always-1, sign(x0).
class ToyPool final : public VoterPool {
public:
    std::size_t size() const override { return 3; }
    int predict(std::size_t voter, std::span<const double> x) const override {
        switch (voter) {
            case 0: return 1;
            case 1: return -1;
            default: return x[0] >= 0.0 ? 1 : -1;
        }
    }
};

class BrokenPool final : public VoterPool {
public:
    std::size_t size() const override { return 1; }
    int predict(std::size_t, std::span<const double>) const override { return 0; }
};

class EmptyPool final : public VoterPool {
public:
    std::size_t size() const override { return 0; }
    int predict(std::size_t, std::span<const double>) const override { return 1; }
};

LabeledSample tiny_sample() {
    // Empirical realization of the tiny fixture with equal counts.
    return LabeledSample({{1.0}, {1.0}, {-1.0}, {-1.0}}, {1, 1, -1, -1});
}

// Random sample + voter table for property tests.
struct RandomEmpirical {
    LabeledSample sample;
    VoterMatrix votes;
    Posterior rho;
};

RandomEmpirical random_empirical(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t m = 1 + rng.index(20);
    const std::size_t n = 1 + rng.index(5);
    std::vector<std::vector<double>> rows(m);
    std::vector<int> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        rows[i] = {rng.normal(), rng.normal()};
        labels[i] = rng.uniform01() < 0.5 ? 1 : -1;
    }
    std::vector<std::vector<int>> table(n, std::vector<int>(m));
    for (auto& row : table)
        for (int& v : row) v = rng.uniform01() < 0.5 ? -1 : 1;
    Posterior rho = random_posterior(n, 1.0, rng);
    return {LabeledSample(std::move(rows), std::move(labels)), VoterMatrix(std::move(table)),
            std::move(rho)};
}

} // namespace

TEST_SUITE_BEGIN("estimators");

TEST_CASE("evaluate_voters basics") {
    const std::vector<std::vector<double>> rows{{-2.0}, {3.0}, {0.5}};
    const VoterMatrix votes = evaluate_voters(rows, ToyPool{});
    // always+1 row
    for (std::size_t i = 0; i < 3; ++i) CHECK(votes.at(0, i) == 1);
    // stump sign(x0 - 0) on {-2, 3}
    CHECK(votes.at(2, 0) == -1);
    CHECK(votes.at(2, 1) == 1);

    CHECK_THROWS_AS(evaluate_voters(rows, EmptyPool{}), ConfigError);
    CHECK_THROWS_AS(evaluate_voters(rows, BrokenPool{}), ConfigError);
}

TEST_CASE("empirical gibbs risk on the tiny realization") {
    const LabeledSample s = tiny_sample();
    const VoterMatrix votes = evaluate_voters(s.rows(), ToyPool{});
    // Uniform over {always+1, always-1}: exactly 1/2 on any labeled sample.
    CHECK(empirical_gibbs_risk(s, votes, Posterior({0.5, 0.5, 0.0})) == doctest::Approx(0.5));
    // sign(x0) is perfect on this sample.
    CHECK(empirical_gibbs_risk(s, votes, Posterior::point_mass(3, 2)) == 0.0);
}

TEST_CASE("empirical joint error on the tiny realization") {
    const LabeledSample s = tiny_sample();
    const VoterMatrix votes = evaluate_voters(s.rows(), ToyPool{});
    CHECK(empirical_joint_error(s, votes, Posterior({0.5, 0.5, 0.0})) ==
          doctest::Approx(0.25));
    CHECK(empirical_joint_error(s, votes, Posterior::point_mass(3, 2)) == 0.0);
    // Point mass: joint error reduces to the empirical risk of that voter.
    CHECK(empirical_joint_error(s, votes, Posterior::point_mass(3, 0)) ==
          empirical_gibbs_risk(s, votes, Posterior::point_mass(3, 0)));
}

TEST_CASE("empirical domain disagreement examples") {
    // Source {x=0}, target {x=1}, voters {sign(x-0.5), always+1}, uniform rho.
    class Pair2 final : public VoterPool {
    public:
        std::size_t size() const override { return 2; }
        int predict(std::size_t voter, std::span<const double> x) const override {
            return voter == 0 ? (x[0] >= 0.5 ? 1 : -1) : 1;
        }
    };
    const LabeledSample src({{0.0}}, {1});
    const UnlabeledSample tgt({{1.0}});
    const SamplePair pair(src, tgt);
    const VoterMatrix sv = evaluate_voters(src.rows(), Pair2{});
    const VoterMatrix tv = evaluate_voters(tgt.rows(), Pair2{});
    CHECK(empirical_domain_disagreement(pair, sv, tv, Posterior({0.5, 0.5})) ==
          doctest::Approx(0.5).epsilon(1e-15));

    // Target = source points: identical empirical marginals.
    const SamplePair same(src, UnlabeledSample(src.rows()));
    CHECK(empirical_domain_disagreement(same, sv, sv, Posterior({0.5, 0.5})) == 0.0);

    // A single voter has a zero disagreement matrix.
    const VoterMatrix lone(std::vector<std::vector<int>>{{1}});
    CHECK(empirical_domain_disagreement(pair, lone, lone, Posterior::point_mass(1, 0)) == 0.0);
}

TEST_CASE("estimators equal the exact engine on the empirical domain") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const RandomEmpirical e = random_empirical(derive_seed(31, seed));
        const FiniteDomain d = empirical_domain(e.sample);

        CHECK(std::fabs(empirical_gibbs_risk(e.sample, e.votes, e.rho) -
                        gibbs_risk(d, e.votes, e.rho)) < 1e-12);
        CHECK(std::fabs(empirical_joint_error(e.sample, e.votes, e.rho) -
                        expected_joint_error(d, e.votes, e.rho)) < 1e-12);

        // And both agree with the direct row-sum oracle.
        CHECK(std::fabs(empirical_gibbs_risk(e.sample, e.votes, e.rho) -
                        oracle::empirical_gibbs_risk(e.sample.labels(), e.votes, e.rho)) <
              1e-12);
        CHECK(std::fabs(empirical_joint_error(e.sample, e.votes, e.rho) -
                        oracle::empirical_joint_error(e.sample.labels(), e.votes, e.rho)) <
              1e-12);

        const RandomEmpirical f = random_empirical(derive_seed(37, seed));
        if (f.votes.num_voters() == e.votes.num_voters()) {
            const SamplePair pair(e.sample, UnlabeledSample(f.sample.rows()));
            CHECK(std::fabs(
                      empirical_domain_disagreement(pair, e.votes, f.votes, e.rho) -
                      oracle::empirical_domain_disagreement(e.votes, f.votes, e.rho)) < 1e-12);
        }
    }
}

TEST_CASE("estimators are invariant to row permutation") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RandomEmpirical e = random_empirical(derive_seed(41, seed));
        const std::size_t m = e.sample.size();

        std::vector<std::vector<double>> rows(m);
        std::vector<int> labels(m);
        std::vector<std::vector<int>> table(e.votes.num_voters(), std::vector<int>(m));
        for (std::size_t i = 0; i < m; ++i) {
            rows[i] = e.sample.rows()[m - 1 - i];
            labels[i] = e.sample.labels()[m - 1 - i];
            for (std::size_t h = 0; h < e.votes.num_voters(); ++h)
                table[h][i] = e.votes.at(h, m - 1 - i);
        }
        const LabeledSample rev(rows, labels);
        const VoterMatrix rev_votes(table);

        CHECK(std::fabs(empirical_gibbs_risk(e.sample, e.votes, e.rho) -
                        empirical_gibbs_risk(rev, rev_votes, e.rho)) < 1e-12);
        CHECK(std::fabs(empirical_joint_error(e.sample, e.votes, e.rho) -
                        empirical_joint_error(rev, rev_votes, e.rho)) < 1e-12);
    }
}

TEST_CASE("sample construction validation") {
    CHECK_THROWS_AS(LabeledSample({}, {}), ConfigError);
    CHECK_THROWS_AS(LabeledSample({{1.0}}, {2}), ConfigError);
    CHECK_THROWS_AS(LabeledSample({{1.0}, {1.0, 2.0}}, {1, -1}), ConfigError);
    CHECK_THROWS_AS(UnlabeledSample({}), ConfigError);
    CHECK_THROWS_AS(SamplePair(LabeledSample({{1.0}}, {1}), UnlabeledSample({{1.0, 2.0}})),
                    ConfigError);
}

TEST_CASE("estimator consistency improves with sample size") {
    // Fixed domain, posterior and voters; i.i.d. samples of growing size.
    DatasetSpec spec;
    spec.points = 5;
    spec.voters = 4;
    const FiniteInstance inst = random_finite_instance(spec, 97);
    const double exact_gibbs = gibbs_risk(inst.source, inst.voters, inst.rho);
    const double exact_joint = expected_joint_error(inst.source, inst.voters, inst.rho);
    const double exact_dis =
        domain_disagreement(inst.source, inst.target, inst.voters, inst.rho);

    const std::size_t sizes[] = {100, 1000, 10000};
    const int n_seeds = 100;
    double median_err[3][3]; // [estimator][size index]
    int below_bound_at_largest[3] = {0, 0, 0};

    for (int si = 0; si < 3; ++si) {
        const std::size_t m = sizes[si];
        std::vector<double> errs[3];
        for (int s = 0; s < n_seeds; ++s) {
            Rng rng(derive_seed(1234, static_cast<std::uint64_t>(si * 1000 + s)));
            const DomainDraw sd = draw_joint(inst.source, m, rng);
            const std::vector<std::size_t> td = draw_marginal(inst.target, m, rng);
            const LabeledSample src(draw_rows(inst.source, sd.point_idx), sd.labels);
            const UnlabeledSample tgt(draw_rows(inst.target, td));
            const VoterMatrix sv = gather_columns(inst.voters, sd.point_idx);
            const VoterMatrix tv = gather_columns(inst.voters, td);
            const SamplePair pair(src, tgt);

            errs[0].push_back(
                std::fabs(empirical_gibbs_risk(src, sv, inst.rho) - exact_gibbs));
            errs[1].push_back(
                std::fabs(empirical_joint_error(src, sv, inst.rho) - exact_joint));
            errs[2].push_back(std::fabs(
                empirical_domain_disagreement(pair, sv, tv, inst.rho) - exact_dis));
        }
        for (int k = 0; k < 3; ++k) {
            std::sort(errs[k].begin(), errs[k].end());
            median_err[k][si] = errs[k][n_seeds / 2];
            if (si == 2) {
                const double bound = 3.0 / std::sqrt(static_cast<double>(m));
                below_bound_at_largest[k] = static_cast<int>(std::count_if(
                    errs[k].begin(), errs[k].end(), [&](double e) { return e < bound; }));
            }
        }
    }

    for (int k = 0; k < 3; ++k) {
        CHECK(median_err[k][0] > median_err[k][1]);
        CHECK(median_err[k][1] > median_err[k][2]);
        CHECK(below_bound_at_largest[k] >= 95);
    }
}

TEST_SUITE_END();
