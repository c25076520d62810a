#include "qdmd/dmd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace qdmd {

namespace {

// Farthest-point greedy selection in descriptor coordinates; deterministic
// (start from `seed`, ties broken by the lowest candidate index).
std::vector<int> farthest_points(const MatrixXd& coords, const std::vector<int>& candidates,
                                 int seed, int count) {
    std::vector<int> chosen{seed};
    std::vector<double> dist(candidates.size(), std::numeric_limits<double>::infinity());
    while (static_cast<int>(chosen.size()) < count) {
        int best = -1;
        double best_d = -1.0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const int idx = candidates[c];
            if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end()) continue;
            dist[c] = std::min(dist[c], (coords.row(idx) - coords.row(chosen.back())).norm());
            if (dist[c] > best_d + 1e-15) {
                best_d = dist[c];
                best = idx;
            }
        }
        if (best < 0) break;
        chosen.push_back(best);
    }
    return chosen;
}

SampleRecord make_record(const EvaluatedEnsemble& ens, int idx, Membership m) {
    SampleRecord r;
    r.state_id = ens.ids[idx];
    r.descriptors = ens.d_rows.row(idx);
    r.energy = ens.energies[idx];
    r.membership = m;
    return r;
}

}  // namespace

std::vector<std::string> DescriptorPool::labels() const {
    std::vector<std::string> out;
    out.reserve(descriptors.size());
    for (const auto& d : descriptors) out.push_back(d.label);
    return out;
}

void DescriptorPool::validate() const {
    std::set<std::string> seen;
    for (const auto& d : descriptors)
        if (!seen.insert(d.label).second)
            throw std::invalid_argument("pool: duplicate descriptor label " + d.label);
}

EvaluatedEnsemble evaluate_states(const SpectralDecomposition& dec, const DescriptorPool& pool) {
    EvaluatedEnsemble ens;
    ens.labels = pool.labels();
    const int n = dec.count();
    ens.ids.resize(n);
    ens.energies.resize(n);
    ens.d_rows.resize(n, pool.size());
    for (int k = 0; k < n; ++k) {
        ens.ids[k] = k;
        ens.energies[k] = dec.eigenvalues[k];
        const VectorXd v = dec.eigenvectors.col(k);
        for (int j = 0; j < pool.size(); ++j)
            ens.d_rows(k, j) = expectation(pool.descriptors[j], v);
    }
    return ens;
}

EvaluatedEnsemble merge_ensembles(const std::vector<EvaluatedEnsemble>& parts) {
    EvaluatedEnsemble out;
    if (parts.empty()) return out;
    out.labels = parts.front().labels;
    std::vector<std::tuple<double, int, VectorXd>> rows;  // (E, id, d)
    int id_offset = 0;
    for (const auto& p : parts) {
        if (p.labels != out.labels)
            throw std::invalid_argument("merge: ensembles evaluated over different pools");
        for (int k = 0; k < p.energies.size(); ++k)
            rows.emplace_back(p.energies[k], p.ids[k] + id_offset, p.d_rows.row(k));
        id_offset += 1 << 20;
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    out.ids.resize(rows.size());
    out.energies.resize(rows.size());
    out.d_rows.resize(rows.size(), out.labels.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.energies[i] = std::get<0>(rows[i]);
        out.ids[i] = std::get<1>(rows[i]);
        out.d_rows.row(i) = std::get<2>(rows[i]);
    }
    return out;
}

const char* to_string(VerdictCase v) {
    switch (v) {
        case VerdictCase::ATrueNegative: return "A-true-negative";
        case VerdictCase::B1FewerDescriptors: return "B1-fewer-descriptors";
        case VerdictCase::B1Undersampling: return "B1-undersampling";
        case VerdictCase::B2TruePositive: return "B2-true-positive";
    }
    return "?";
}

// ---- Sampling ------------------------------------------------------------

std::vector<SampleRecord> sample_low_energy(const EvaluatedEnsemble& ens, double lambda_cut,
                                            int count, SamplePolicy policy, bool* shortfall) {
    std::vector<int> below;
    for (int k = 0; k < ens.energies.size(); ++k)
        if (ens.energies[k] <= lambda_cut) below.push_back(k);
    if (shortfall) *shortfall = static_cast<int>(below.size()) < count;
    std::vector<int> chosen;
    if (below.empty()) return {};
    if (policy == SamplePolicy::Eigenstates || static_cast<int>(below.size()) <= count) {
        chosen.assign(below.begin(), below.end());
        if (static_cast<int>(chosen.size()) > count) chosen.resize(count);
    } else {
        chosen = farthest_points(ens.d_rows, below, below.front(), count);
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<SampleRecord> out;
    for (int idx : chosen) out.push_back(make_record(ens, idx, Membership::LowEnergy));
    return out;
}

std::vector<SampleRecord> sample_complement(const EvaluatedEnsemble& ens, double lambda_cut,
                                            int count, SamplePolicy policy, bool* shortfall) {
    std::vector<int> above;
    std::vector<int> below;
    for (int k = 0; k < ens.energies.size(); ++k)
        (ens.energies[k] > lambda_cut ? above : below).push_back(k);
    if (shortfall) *shortfall = static_cast<int>(above.size()) < count;
    if (above.empty()) return {};
    std::vector<int> chosen;
    if (policy == SamplePolicy::Eigenstates || static_cast<int>(above.size()) <= count) {
        chosen.assign(above.begin(), above.end());
        if (static_cast<int>(chosen.size()) > count) chosen.resize(count);
    } else {
        // Prefer complement states inside the low-energy image box, then spread.
        VectorXd lo = VectorXd::Constant(ens.d_rows.cols(), std::numeric_limits<double>::infinity());
        VectorXd hi = -lo;
        for (int idx : below) {
            lo = lo.cwiseMin(ens.d_rows.row(idx).transpose());
            hi = hi.cwiseMax(ens.d_rows.row(idx).transpose());
        }
        auto inside = [&](int idx) {
            if (below.empty()) return true;
            for (int j = 0; j < ens.d_rows.cols(); ++j)
                if (ens.d_rows(idx, j) < lo[j] - 1e-12 || ens.d_rows(idx, j) > hi[j] + 1e-12)
                    return false;
            return true;
        };
        std::vector<int> inside_idx, outside_idx;
        for (int idx : above) (inside(idx) ? inside_idx : outside_idx).push_back(idx);
        if (static_cast<int>(inside_idx.size()) >= count) {
            chosen = farthest_points(ens.d_rows, inside_idx, inside_idx.front(), count);
        } else if (!inside_idx.empty()) {
            chosen = inside_idx;
            const int extra = count - static_cast<int>(inside_idx.size());
            if (!outside_idx.empty()) {
                auto spread = farthest_points(ens.d_rows, outside_idx, outside_idx.front(),
                                              std::min<int>(extra, outside_idx.size()));
                chosen.insert(chosen.end(), spread.begin(), spread.end());
            }
        } else {
            chosen = farthest_points(ens.d_rows, outside_idx, outside_idx.front(),
                                     std::min<int>(count, outside_idx.size()));
        }
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<SampleRecord> out;
    for (int idx : chosen) out.push_back(make_record(ens, idx, Membership::Complement));
    return out;
}

std::vector<SampleRecord> sample_low_energy(const SpectralDecomposition& dec,
                                            const DescriptorPool& pool, double lambda_cut,
                                            int count, SamplePolicy policy, bool* shortfall) {
    return sample_low_energy(evaluate_states(dec, pool), lambda_cut, count, policy, shortfall);
}

std::vector<SampleRecord> sample_complement(const SpectralDecomposition& dec,
                                            const DescriptorPool& pool, double lambda_cut,
                                            int count, SamplePolicy policy, bool* shortfall) {
    return sample_complement(evaluate_states(dec, pool), lambda_cut, count, policy, shortfall);
}

// ---- Regression ------------------------------------------------------------

void evaluate_design(const std::vector<SampleRecord>& samples, MatrixXd& X, VectorXd& y) {
    if (samples.empty()) {
        X.resize(0, 0);
        y.resize(0);
        return;
    }
    const int cols = static_cast<int>(samples.front().descriptors.size());
    X.resize(samples.size(), cols);
    y.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        X.row(i) = samples[i].descriptors;
        y[i] = samples[i].energy;
    }
}

RegressionFit fit_linear(const MatrixXd& X, const VectorXd& y, bool with_intercept) {
    RegressionFit fit;
    fit.with_intercept = with_intercept;
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    fit.selected.resize(p);
    for (int j = 0; j < p; ++j) fit.selected[j] = j;
    if (n < p + (with_intercept ? 1 : 0))
        throw std::invalid_argument("fit: not enough samples for the requested design");

    MatrixXd design(n, p + (with_intercept ? 1 : 0));
    if (p > 0) design.leftCols(p) = X;
    if (with_intercept) design.col(p).setOnes();

    Eigen::JacobiSVD<MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd sv = svd.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    const double rank_tol = std::max(n, p + 1) * smax * 1e-13;
    int rank_full = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > rank_tol) ++rank_full;
    fit.condition = (sv.size() && sv[sv.size() - 1] > rank_tol)
                        ? smax / sv[sv.size() - 1]
                        : std::numeric_limits<double>::infinity();

    // Gram rank of the descriptor columns alone.
    if (p > 0) {
        Eigen::JacobiSVD<MatrixXd> svd_x(X);
        const VectorXd sx = svd_x.singularValues();
        const double tol_x = std::max(n, p) * (sx.size() ? sx[0] : 0.0) * 1e-13;
        fit.gram_rank = 0;
        for (int i = 0; i < sx.size(); ++i)
            if (sx[i] > tol_x) ++fit.gram_rank;
    }

    fit.rank_deficient = rank_full < design.cols();
    if (fit.rank_deficient) {
        fit.residual_max = std::numeric_limits<double>::infinity();
        return fit;  // couplings withheld
    }

    VectorXd beta = svd.solve(y);
    fit.couplings = beta.head(p);
    fit.intercept = with_intercept ? beta[p] : 0.0;
    const VectorXd res = y - design * beta;
    fit.residual_max = res.size() ? res.cwiseAbs().maxCoeff() : 0.0;
    return fit;
}

RegressionFit fit_samples(const std::vector<SampleRecord>& samples, const std::vector<int>& subset,
                          const std::vector<std::string>& pool_labels, bool with_intercept) {
    std::vector<const SampleRecord*> low;
    for (const auto& s : samples)
        if (s.membership == Membership::LowEnergy) low.push_back(&s);
    MatrixXd X(low.size(), subset.size());
    VectorXd y(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) {
        for (std::size_t j = 0; j < subset.size(); ++j)
            X(i, j) = low[i]->descriptors[subset[j]];
        y[i] = low[i]->energy;
    }
    RegressionFit fit = fit_linear(X, y, with_intercept);
    fit.selected = subset;
    fit.labels.clear();
    for (int col : subset)
        fit.labels.push_back(col < static_cast<int>(pool_labels.size()) ? pool_labels[col]
                                                                        : std::to_string(col));
    return fit;
}

double minimax_residual_1d(const VectorXd& x, const VectorXd& y) {
    const int n = static_cast<int>(x.size());
    double bound = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(x[i] - x[j]) < 1e-14)
                bound = std::max(bound, 0.5 * std::abs(y[i] - y[j]));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                int i = a, j = b, k = c;  // sort by x
                if (x[i] > x[j]) std::swap(i, j);
                if (x[j] > x[k]) std::swap(j, k);
                if (x[i] > x[j]) std::swap(i, j);
                const double dx = x[k] - x[i];
                if (dx < 1e-14) continue;
                const double chord = y[i] + (y[k] - y[i]) * (x[j] - x[i]) / dx;
                bound = std::max(bound, 0.5 * std::abs(y[j] - chord));
            }
    return bound;
}

double RegressionFit::predict(const VectorXd& full_pool_row) const {
    if (couplings.size() == 0 && !selected.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double v = intercept;
    for (std::size_t j = 0; j < selected.size(); ++j)
        v += couplings[j] * full_pool_row[selected[j]];
    return v;
}

// ---- Verdicts ----------------------------------------------------------------

CompressibilityVerdict classify_fit(const RegressionFit& fit,
                                    const std::vector<SampleRecord>& samples, double lambda_cut,
                                    double eps_target, double sigma) {
    CompressibilityVerdict v;
    std::vector<SampleRecord> low, comp;
    for (const auto& s : samples)
        (s.membership == Membership::LowEnergy ? low : comp).push_back(s);

    if (fit.rank_deficient || fit.condition > kCollinearityThreshold) {
        v.verdict = VerdictCase::B1Undersampling;
        v.evidence.push_back("collinearity alarm: rank " + std::to_string(fit.gram_rank) + "/" +
                             std::to_string(fit.selected.size()) + ", condition " +
                             std::to_string(fit.condition));
        return v;
    }
    if (!(fit.residual_max < eps_target)) {
        v.verdict = VerdictCase::ATrueNegative;
        v.evidence.push_back("residual " + std::to_string(fit.residual_max) + " >= target " +
                             std::to_string(eps_target));
        return v;
    }
    // Drop-one significance: a descriptor is removable when the refit without
    // it still satisfies the error target.
    std::vector<std::string> labels(fit.labels);
    for (std::size_t drop = 0; drop < fit.selected.size(); ++drop) {
        std::vector<int> rest;
        for (std::size_t j = 0; j < fit.selected.size(); ++j)
            if (j != drop) rest.push_back(fit.selected[j]);
        try {
            RegressionFit sub = fit_samples(samples, rest, labels, fit.with_intercept);
            if (!sub.rank_deficient && sub.residual_max < eps_target)
                v.removable_descriptors.push_back(fit.selected[drop]);
        } catch (const std::exception&) {
            // not enough samples to refit: treated as significant
        }
    }
    if (!v.removable_descriptors.empty()) {
        v.verdict = VerdictCase::B1FewerDescriptors;
        v.evidence.push_back(std::to_string(v.removable_descriptors.size()) +
                             " descriptor(s) removable at the current target");
        return v;
    }
    // Penalty condition via the augmented operator. Exact complement
    // eigenstates are orthogonal to the span of the sampled low-energy states,
    // so the span projector assigns them Lambda + sigma; the hull test flags
    // intruder candidates for the evidence record.
    if (!low.empty()) {
        AugmentedModel model = augment_effective(fit, low, lambda_cut, sigma);
        v.intruder_samples = flag_intruders(model, comp);
        if (!v.intruder_samples.empty())
            v.evidence.push_back(std::to_string(v.intruder_samples.size()) +
                                 " complement sample(s) inside the image hull with fitted energy "
                                 "<= Lambda (handled by the augmented operator)");
    }
    const double penalty_min = lambda_cut + sigma;
    if (!(penalty_min > lambda_cut)) {
        v.verdict = VerdictCase::B1Undersampling;
        v.evidence.push_back("penalty condition failed");
        return v;
    }
    v.verdict = VerdictCase::B2TruePositive;
    v.evidence.push_back("residual " + std::to_string(fit.residual_max) + " < target, all " +
                         std::to_string(fit.selected.size()) + " descriptors significant");
    return v;
}

// ---- Discover loop ------------------------------------------------------------

namespace {

bool next_subset(std::vector<int>& subset, int pool_size) {
    const int k = static_cast<int>(subset.size());
    int i = k - 1;
    while (i >= 0 && subset[i] == pool_size - k + i) --i;
    if (i < 0) return false;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    return true;
}

}  // namespace

DiscoverResult discover(const EvaluatedEnsemble& ens, double lambda_cut, double eps_target,
                        int max_kappa, long budget, double sigma) {
    DiscoverResult result;
    const int pool_size = static_cast<int>(ens.labels.size());
    max_kappa = std::min(max_kappa, pool_size);
    long iterations = 0;

    for (int kappa = 1; kappa <= max_kappa; ++kappa) {
        std::vector<int> subset(kappa);
        for (int j = 0; j < kappa; ++j) subset[j] = j;
        do {
            if (iterations++ >= budget) {
                result.compressible = false;
                return result;
            }
            // Draw at least 2^kappa fresh samples per side in the subset
            // coordinates and concatenate with everything collected so far.
            // kappa+2 low samples keep at least one residual degree of freedom
            // whenever the low space offers one, so an exactly-interpolating
            // fit cannot masquerade as compressible.
            const int want = 1 << kappa;
            const int want_low = std::max(want, kappa + 2);
            EvaluatedEnsemble view;
            view.labels.assign(kappa, "");
            view.ids = ens.ids;
            view.energies = ens.energies;
            view.d_rows.resize(ens.energies.size(), kappa);
            for (int j = 0; j < kappa; ++j) view.d_rows.col(j) = ens.d_rows.col(subset[j]);
            auto low = sample_low_energy(view, lambda_cut, want_low, SamplePolicy::ImageSaturating);
            auto comp = sample_complement(view, lambda_cut, want, SamplePolicy::ImageSaturating);

            std::set<int> have;
            for (const auto& s : result.samples) have.insert(s.state_id);
            auto append_full = [&](const std::vector<SampleRecord>& recs, Membership m) {
                int added = 0;
                for (const auto& r : recs) {
                    if (have.count(r.state_id)) continue;
                    have.insert(r.state_id);
                    for (int k2 = 0; k2 < ens.energies.size(); ++k2) {
                        if (ens.ids[k2] == r.state_id) {
                            result.samples.push_back(make_record(ens, k2, m));
                            ++added;
                            break;
                        }
                    }
                }
                return added;
            };
            DiscoverStep step;
            step.low_samples = append_full(low, Membership::LowEnergy);
            step.complement_samples = append_full(comp, Membership::Complement);
            step.ansatz = subset;
            try {
                step.fit = fit_samples(result.samples, subset, ens.labels, true);
            } catch (const std::exception&) {
                continue;  // not enough samples yet for this subset size
            }
            step.verdict = classify_fit(step.fit, result.samples, lambda_cut, eps_target, sigma);
            result.trace.push_back(step);
            if (step.verdict.verdict == VerdictCase::B2TruePositive) {
                result.compressible = true;
                result.fit = step.fit;
                return result;
            }
        } while (next_subset(subset, pool_size));
    }
    result.compressible = false;
    return result;
}

// ---- Augmented model ------------------------------------------------------------

AugmentedModel augment_effective(const RegressionFit& fit,
                                 const std::vector<SampleRecord>& low_samples, double lambda_cut,
                                 double sigma) {
    if (low_samples.empty()) throw std::invalid_argument("augment: empty image hull");
    if (sigma <= 0) throw std::invalid_argument("augment: sigma must be positive");
    AugmentedModel m;
    m.fit = fit;
    m.lambda_cut = lambda_cut;
    m.sigma = sigma;
    const int k = static_cast<int>(fit.selected.size());
    m.hull_min = VectorXd::Constant(k, std::numeric_limits<double>::infinity());
    m.hull_max = -m.hull_min;
    for (const auto& s : low_samples) {
        for (int j = 0; j < k; ++j) {
            const double v = s.descriptors[fit.selected[j]];
            m.hull_min[j] = std::min(m.hull_min[j], v);
            m.hull_max[j] = std::max(m.hull_max[j], v);
        }
    }
    return m;
}

bool AugmentedModel::inside_hull(const VectorXd& row, double tol) const {
    for (std::size_t j = 0; j < fit.selected.size(); ++j) {
        const double v = row[fit.selected[j]];
        if (v < hull_min[j] - tol || v > hull_max[j] + tol) return false;
    }
    return true;
}

double AugmentedModel::evaluate(const VectorXd& row) const {
    return inside_hull(row) ? fit.predict(row) : lambda_cut + sigma;
}

std::vector<int> flag_intruders(const AugmentedModel& model,
                                const std::vector<SampleRecord>& complement_samples) {
    std::vector<int> out;
    for (std::size_t i = 0; i < complement_samples.size(); ++i) {
        const auto& s = complement_samples[i];
        if (s.membership != Membership::Complement) continue;
        if (model.inside_hull(s.descriptors) && model.evaluate(s.descriptors) <= model.lambda_cut)
            out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace qdmd
