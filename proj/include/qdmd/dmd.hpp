#pragma once

#include "qdmd/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdmd {

/// Ordered descriptor pool with unique labels.
struct DescriptorPool {
    std::vector<ManyBodyOperator> descriptors;

    int size() const { return static_cast<int>(descriptors.size()); }
    std::vector<std::string> labels() const;
    void validate() const;  // throws on duplicate labels
};

enum class Membership { LowEnergy, Complement };
enum class SamplePolicy { Eigenstates, ImageSaturating };

struct SampleRecord {
    int state_id = -1;
    VectorXd descriptors;  // evaluated over the full pool, pool order
    double energy = 0.0;   // F_H, units of t
    Membership membership = Membership::LowEnergy;
    std::optional<double> noise;  // truncation step or additive error bound
};

/// Descriptor-coordinate table of a state set; the sampling routines and the
/// discover loop operate on this so that multi-sector state sets can be fed
/// through one interface.
struct EvaluatedEnsemble {
    std::vector<std::string> labels;
    std::vector<int> ids;
    VectorXd energies;   // ascending
    MatrixXd d_rows;     // one row per state, |pool| columns
};

EvaluatedEnsemble evaluate_states(const SpectralDecomposition& dec, const DescriptorPool& pool);
EvaluatedEnsemble merge_ensembles(const std::vector<EvaluatedEnsemble>& parts);

struct RegressionFit {
    std::vector<int> selected;          // pool column indices
    std::vector<std::string> labels;
    VectorXd couplings;                 // withheld (empty) when rank-deficient
    double intercept = 0.0;
    bool with_intercept = true;
    double residual_max = 0.0;          // eps-hat over the fitted samples
    int gram_rank = 0;
    double condition = 0.0;             // of the design incl. intercept column
    bool rank_deficient = false;
    std::optional<double> penalty_min;  // min augmented F over complement samples

    double predict(const VectorXd& full_pool_row) const;
};

enum class VerdictCase { ATrueNegative, B1FewerDescriptors, B1Undersampling, B2TruePositive };

struct CompressibilityVerdict {
    VerdictCase verdict = VerdictCase::ATrueNegative;
    std::vector<std::string> evidence;
    std::vector<int> removable_descriptors;  // pool ids (B1-fewer)
    std::vector<int> intruder_samples;       // sample indices flagged by the hull test
};

const char* to_string(VerdictCase v);

// ---- Sampling ------------------------------------------------------------

/// States with E <= lambda_cut. The image-saturating policy greedily picks
/// farthest points in descriptor coordinates starting from the lowest state.
/// Sets *shortfall when fewer than `count` states exist below the threshold.
std::vector<SampleRecord> sample_low_energy(const EvaluatedEnsemble& ens, double lambda_cut,
                                            int count, SamplePolicy policy,
                                            bool* shortfall = nullptr);
std::vector<SampleRecord> sample_low_energy(const SpectralDecomposition& dec,
                                            const DescriptorPool& pool, double lambda_cut,
                                            int count, SamplePolicy policy,
                                            bool* shortfall = nullptr);

/// States with E > lambda_cut; image-saturating targets the region covered by
/// the low-energy image (to surface intruders) before spreading out.
std::vector<SampleRecord> sample_complement(const EvaluatedEnsemble& ens, double lambda_cut,
                                            int count, SamplePolicy policy,
                                            bool* shortfall = nullptr);
std::vector<SampleRecord> sample_complement(const SpectralDecomposition& dec,
                                            const DescriptorPool& pool, double lambda_cut,
                                            int count, SamplePolicy policy,
                                            bool* shortfall = nullptr);

// ---- Regression ------------------------------------------------------------

/// X_ij = d_j[psi_i] over the full pool, y_i = F_H[psi_i]; deterministic order.
void evaluate_design(const std::vector<SampleRecord>& samples, MatrixXd& X, VectorXd& y);

/// Ordinary least squares on the given design (all columns used).
RegressionFit fit_linear(const MatrixXd& X, const VectorXd& y, bool with_intercept = true);

/// OLS restricted to `subset` pool columns of the samples' descriptor rows.
RegressionFit fit_samples(const std::vector<SampleRecord>& samples, const std::vector<int>& subset,
                          const std::vector<std::string>& pool_labels, bool with_intercept = true);

/// Certified minimax (Chebyshev) residual bound for a one-descriptor linear
/// model: the largest three-point nonconformity. Unlike the OLS max residual,
/// this bound is non-decreasing under sample concatenation.
double minimax_residual_1d(const VectorXd& x, const VectorXd& y);

inline constexpr double kCollinearityThreshold = 1e8;

/// Theorem-6 case analysis. Complement samples enter the penalty check through
/// the augmented operator: exact complement eigenstates are orthogonal to the
/// span of the sampled low-energy states, so their augmented energy is
/// Lambda + sigma; samples whose descriptor coordinates fall inside the image
/// hull with a fitted energy <= Lambda are additionally flagged as intruders.
CompressibilityVerdict classify_fit(const RegressionFit& fit,
                                    const std::vector<SampleRecord>& samples, double lambda_cut,
                                    double eps_target, double sigma);

// ---- Discovery loop ---------------------------------------------------------

struct DiscoverStep {
    std::vector<int> ansatz;
    RegressionFit fit;
    CompressibilityVerdict verdict;
    int low_samples = 0, complement_samples = 0;
};

struct DiscoverResult {
    bool compressible = false;
    RegressionFit fit;                // the accepted fit when compressible
    std::vector<DiscoverStep> trace;
    std::vector<SampleRecord> samples;  // concatenated across iterations
};

/// Iterates ansatz subsets (increasing kappa, lexicographic), concatenating
/// samples, until a B2 verdict or budget exhaustion.
DiscoverResult discover(const EvaluatedEnsemble& ens, double lambda_cut, double eps_target,
                        int max_kappa, long budget, double sigma);

// ---- Augmented effective model ----------------------------------------------

/// H'' = P H' P + (1-P)(Lambda+sigma)(1-P) with P realized as membership of the
/// descriptor coordinates in the axis-aligned bounding box of the low samples.
struct AugmentedModel {
    RegressionFit fit;
    VectorXd hull_min, hull_max;  // over selected coordinates
    double lambda_cut = 0.0;
    double sigma = 0.0;

    bool inside_hull(const VectorXd& full_pool_row, double tol = 1e-12) const;
    double evaluate(const VectorXd& full_pool_row) const;
};

AugmentedModel augment_effective(const RegressionFit& fit,
                                 const std::vector<SampleRecord>& low_samples, double lambda_cut,
                                 double sigma);

/// Complement samples inside the hull whose augmented energy is <= Lambda.
std::vector<int> flag_intruders(const AugmentedModel& model,
                                const std::vector<SampleRecord>& complement_samples);

}  // namespace qdmd
