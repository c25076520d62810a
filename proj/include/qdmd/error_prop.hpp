#pragma once

#include "qdmd/dmd.hpp"

#include <string>
#include <vector>

namespace qdmd {

/// Observable-estimation / state-preparation error budget, units of t.
/// Preset mode pins the ratio chain eps_oe_d = eps_oe_h/10,
/// eps_sp = eps_oe_d/100, eps_r = eps_sp/10.
struct ErrorBudget {
    double eps_oe_h = 0.0;
    double eps_oe_d = 0.0;
    double eps_sp = 0.0;
    double eps_r = 0.0;
    bool preset_ratios = false;

    static ErrorBudget preset(double eps_oe_h);
    void validate() const;
};

struct EntryErrorBounds {
    double eps_y = 0.0;  // |(eps_y)_i|  <= eps_oe_h + lambda_h (2 eps_sp + eps_sp^2)
    double eps_x = 0.0;  // |(eps_X)_ij| <= eps_oe_d + lambda_d (2 eps_sp + eps_sp^2)
};

EntryErrorBounds bound_entry_errors(const ErrorBudget& budget, double lambda_h, double lambda_d);

/// Per-descriptor coupling-error bound 2 eps_oe_h / (max d_j - min d_j) over
/// the low-energy samples. Zero-range descriptors are flagged infinite.
struct ParamErrorBound {
    std::vector<double> bounds;
    std::vector<bool> infinite;
};

ParamErrorBound bound_param_error(double eps_oe_h, const std::vector<SampleRecord>& low_samples);

/// Truncation toward zero to b binary fraction digits; |out - in| <= 2^-b.
double truncate_b_bits(double value, int b);

struct SweepRow {
    int bits = 0;
    std::string coupling;
    double observed = 0.0;
    double bound = 0.0;
    double ratio = 0.0;  // observed / bound
};

struct TruncationSweep {
    std::vector<SweepRow> rows;
    std::string direction = "toward-zero";
    bool perturbed_design = false;
    VectorXd reference_couplings;
};

/// Refits with b-bit truncated energies (descriptors untouched) for each b in
/// [b_min, b_max] and records observed coupling errors against the bound.
/// The generalized mode additionally truncates the design matrix; it is off
/// by default and its rows are reported against the same bound.
TruncationSweep run_truncation_sweep(const std::vector<SampleRecord>& low_samples,
                                     const std::vector<int>& subset,
                                     const std::vector<std::string>& pool_labels, int b_min,
                                     int b_max, bool perturb_design = false);

struct TargetBudget {
    double eps_oe_h = 0.0;
    int bits = 0;
};

/// Largest eps_oe_h whose param-bound meets the target coupling error, and the
/// matching truncation depth b = ceil(log2(1/eps_oe_h)).
TargetBudget budget_from_target(double target_coupling_error,
                                const std::vector<SampleRecord>& low_samples);

}  // namespace qdmd
