#include "dabound/datagen.hpp"

#include <algorithm>
#include <cmath>

namespace dabound {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> point_ids(std::size_t k) {
    std::vector<std::string> ids;
    ids.reserve(k);
    for (std::size_t i = 0; i < k; ++i) ids.push_back("p" + std::to_string(i));
    return ids;
}

std::vector<double> dirichlet(std::size_t k, double conc, Rng& rng) {
    std::vector<double> v(k);
    double sum = 0.0;
    for (double& x : v) {
        x = conc == 1.0 ? rng.exponential() : rng.gamma(conc);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

} // namespace

void DatasetSpec::validate() const {
    if (points == 0 || voters == 0 || m_source == 0 || m_target == 0)
        throw ConfigError("DatasetSpec: all counts must be >= 1");
    if (dirichlet_conc <= 0.0) throw ConfigError("DatasetSpec: concentration must be > 0");
    if (angle_deg < 0.0 || angle_deg >= 180.0)
        throw ConfigError("DatasetSpec: rotation angle must lie in [0, 180)");
    if (flip_rate < 0.0 || flip_rate > 0.5)
        throw ConfigError("DatasetSpec: noise rate must lie in [0, 1/2]");
    if (magnitude < 0.0) throw ConfigError("DatasetSpec: perturbation magnitude must be >= 0");
}

FiniteDomain random_domain(std::size_t points, double conc, Rng& rng) {
    if (points == 0) throw ConfigError("random_domain: need at least one point");
    std::vector<double> atoms = dirichlet(2 * points, conc, rng);
    std::vector<double> pos(atoms.begin(), atoms.begin() + static_cast<long>(points));
    std::vector<double> neg(atoms.begin() + static_cast<long>(points), atoms.end());
    return FiniteDomain(point_ids(points), std::move(pos), std::move(neg));
}

Posterior random_posterior(std::size_t n, double conc, Rng& rng) {
    return Posterior(dirichlet(n, conc, rng));
}

VoterMatrix random_voters(std::size_t n, std::size_t points, Rng& rng) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(points));
    for (auto& row : rows)
        for (int& v : row) v = rng.uniform01() < 0.5 ? -1 : 1;
    return VoterMatrix(std::move(rows));
}

FiniteInstance random_finite_instance(const DatasetSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    FiniteDomain source = random_domain(spec.points, spec.dirichlet_conc, rng);
    FiniteDomain target = random_domain(spec.points, spec.dirichlet_conc, rng);
    VoterMatrix voters = random_voters(spec.voters, spec.points, rng);
    Posterior rho = random_posterior(spec.voters, spec.dirichlet_conc, rng);
    return {std::move(source), std::move(target), std::move(voters), std::move(rho)};
}

PerturbedPair chi2_perturbed_pair(const FiniteDomain& base, double magnitude,
                                  std::uint64_t seed) {
    const std::size_t k = base.num_points();
    for (std::size_t i = 0; i < k; ++i)
        if (base.mass_pos()[i] <= 0.0 || base.mass_neg()[i] <= 0.0)
            throw ConfigError("chi2_perturbed_pair: base must have strictly positive masses");
    if (magnitude < 0.0) throw ConfigError("chi2_perturbed_pair: magnitude must be >= 0");

    // Mean-zero direction of unit L2 norm over the 2k atoms, fixed by seed.
    Rng rng(seed);
    std::vector<double> dir(2 * k);
    double mean = 0.0;
    for (double& d : dir) {
        d = rng.normal();
        mean += d;
    }
    mean /= static_cast<double>(dir.size());
    double norm = 0.0;
    for (double& d : dir) {
        d -= mean;
        norm += d * d;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;

    std::vector<double> pos(k), neg(k);
    for (std::size_t i = 0; i < k; ++i) {
        pos[i] = base.mass_pos()[i] + magnitude * dir[i] / norm;
        neg[i] = base.mass_neg()[i] + magnitude * dir[k + i] / norm;
        if (pos[i] <= 0.0 || neg[i] <= 0.0)
            throw SupportError("chi2_perturbed_pair: magnitude " + std::to_string(magnitude) +
                               " destroys the shared support");
    }
    FiniteDomain target(base.points(), std::move(pos), std::move(neg),
                        base.features());
    FiniteDomain source = base;
    const double chi2 = chi_squared(target, source);
    return {std::move(source), std::move(target), chi2};
}

std::pair<FiniteDomain, FiniteDomain> label_flip_pair(const FiniteDomain& base,
                                                      double rate) {
    if (rate < 0.0 || rate > 0.5)
        throw ConfigError("label_flip_pair: rate must lie in [0, 1/2]");
    const std::size_t k = base.num_points();
    std::vector<double> pos(k), neg(k);
    for (std::size_t i = 0; i < k; ++i) {
        pos[i] = (1.0 - rate) * base.mass_pos()[i] + rate * base.mass_neg()[i];
        neg[i] = (1.0 - rate) * base.mass_neg()[i] + rate * base.mass_pos()[i];
    }
    FiniteDomain target(base.points(), std::move(pos), std::move(neg), base.features());
    return {base, std::move(target)};
}

namespace {

// One moons row: label +-1 with equal probability; the +1 moon is the
// upper half-circle at the origin, the -1 moon the flipped half-circle
// whose bounding box sits at offset (1,-0.5) from the first.
std::pair<std::vector<double>, int> moons_row(double noise, Rng& rng) {
    const int label = rng.uniform01() < 0.5 ? 1 : -1;
    const double t = kPi * rng.uniform01();
    double x, y;
    if (label > 0) {
        x = std::cos(t);
        y = std::sin(t);
    } else {
        x = 1.0 - std::cos(t);
        y = 0.5 - std::sin(t);
    }
    x += noise * rng.normal();
    y += noise * rng.normal();
    return {{x, y}, label};
}

void rotate(std::vector<double>& p, double cos_a, double sin_a) {
    const double x = p[0], y = p[1];
    p[0] = cos_a * x - sin_a * y;
    p[1] = sin_a * x + cos_a * y;
}

} // namespace

MoonsData rotated_moons(std::size_t m_source, std::size_t m_target, double angle_deg,
                        double noise, std::uint64_t seed) {
    if (m_source == 0 || m_target == 0)
        throw ConfigError("rotated_moons: sample sizes must be >= 1");
    if (angle_deg < 0.0 || angle_deg >= 180.0)
        throw ConfigError("rotated_moons: angle must lie in [0, 180)");
    const double a = angle_deg * kPi / 180.0;
    const double cos_a = std::cos(a), sin_a = std::sin(a);

    Rng rng(seed);
    std::vector<std::vector<double>> src_rows;
    std::vector<int> src_labels;
    for (std::size_t i = 0; i < m_source; ++i) {
        auto [row, label] = moons_row(noise, rng);
        src_rows.push_back(std::move(row));
        src_labels.push_back(label);
    }
    std::vector<std::vector<double>> tgt_rows;
    for (std::size_t i = 0; i < m_target; ++i) {
        auto [row, label] = moons_row(noise, rng);
        (void)label; // target labels are discarded, not held out
        rotate(row, cos_a, sin_a);
        tgt_rows.push_back(std::move(row));
    }
    std::vector<std::vector<double>> held_rows;
    std::vector<int> held_labels;
    for (std::size_t i = 0; i < m_target; ++i) {
        auto [row, label] = moons_row(noise, rng);
        rotate(row, cos_a, sin_a);
        held_rows.push_back(std::move(row));
        held_labels.push_back(label);
    }
    return {SamplePair(LabeledSample(std::move(src_rows), std::move(src_labels)),
                       UnlabeledSample(std::move(tgt_rows))),
            LabeledSample(std::move(held_rows), std::move(held_labels))};
}

StumpPool StumpPool::build(const std::vector<std::vector<double>>& rows,
                           std::size_t count, std::uint64_t seed) {
    if (count == 0) throw ConfigError("StumpPool: count must be >= 1");
    if (rows.empty()) throw ConfigError("StumpPool: empty row set");
    const std::size_t d = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != d) throw ConfigError("StumpPool: inconsistent feature dimensions");

    // Sorted per-coordinate values for quantile placement.
    std::vector<std::vector<double>> sorted(d);
    for (std::size_t j = 0; j < d; ++j) {
        sorted[j].reserve(rows.size());
        for (const auto& r : rows) sorted[j].push_back(r[j]);
        std::sort(sorted[j].begin(), sorted[j].end());
    }

    Rng rng(seed);
    StumpPool pool;
    const std::size_t pairs = (count + 1) / 2;
    for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t j = rng.index(d);
        const double q = rng.uniform01();
        const auto& col = sorted[j];
        const std::size_t rank =
            std::min(col.size() - 1, static_cast<std::size_t>(q * static_cast<double>(col.size())));
        const double theta = col[rank];
        pool.stumps_.push_back({j, theta, +1});
        if (pool.stumps_.size() < count) pool.stumps_.push_back({j, theta, -1});
    }
    return pool;
}

int StumpPool::predict(std::size_t voter, std::span<const double> x) const {
    const Stump& s = stumps_[voter];
    if (s.feature >= x.size())
        throw AlignmentError("StumpPool: feature index out of range for this row");
    const int base = x[s.feature] >= s.threshold ? 1 : -1; // sign(0) = +1
    return s.polarity * base;
}

namespace {

std::size_t sample_cdf(const std::vector<double>& cdf, double u) {
    // First index with cdf >= u; the last bucket absorbs fp slack.
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return cdf.size() - 1;
    return static_cast<std::size_t>(it - cdf.begin());
}

} // namespace

DomainDraw draw_joint(const FiniteDomain& domain, std::size_t m, Rng& rng) {
    if (m == 0) throw ConfigError("draw_joint: need m >= 1");
    const std::size_t k = domain.num_points();
    std::vector<double> cdf(2 * k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) cdf[i] = (acc += domain.mass_pos()[i]);
    for (std::size_t i = 0; i < k; ++i) cdf[k + i] = (acc += domain.mass_neg()[i]);

    DomainDraw draw;
    draw.point_idx.reserve(m);
    draw.labels.reserve(m);
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t atom = sample_cdf(cdf, rng.uniform01() * acc);
        draw.point_idx.push_back(atom % k);
        draw.labels.push_back(atom < k ? 1 : -1);
    }
    return draw;
}

std::vector<std::size_t> draw_marginal(const FiniteDomain& domain, std::size_t m,
                                       Rng& rng) {
    if (m == 0) throw ConfigError("draw_marginal: need m >= 1");
    const std::size_t k = domain.num_points();
    std::vector<double> cdf(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) cdf[i] = (acc += domain.marginal(i));
    std::vector<std::size_t> idx;
    idx.reserve(m);
    for (std::size_t t = 0; t < m; ++t)
        idx.push_back(sample_cdf(cdf, rng.uniform01() * acc));
    return idx;
}

VoterMatrix gather_columns(const VoterMatrix& voters,
                           const std::vector<std::size_t>& point_idx) {
    std::vector<std::vector<int>> rows(voters.num_voters(),
                                       std::vector<int>(point_idx.size()));
    for (std::size_t h = 0; h < voters.num_voters(); ++h)
        for (std::size_t c = 0; c < point_idx.size(); ++c) {
            if (point_idx[c] >= voters.num_points())
                throw AlignmentError("gather_columns: point index out of range");
            rows[h][c] = voters.at(h, point_idx[c]);
        }
    return VoterMatrix(std::move(rows));
}

std::vector<std::vector<double>> draw_rows(const FiniteDomain& domain,
                                           const std::vector<std::size_t>& point_idx) {
    std::vector<std::vector<double>> rows;
    rows.reserve(point_idx.size());
    for (std::size_t i : point_idx) {
        if (domain.has_features())
            rows.push_back(domain.features()[i]);
        else
            rows.push_back({static_cast<double>(i)});
    }
    return rows;
}

} // namespace dabound
