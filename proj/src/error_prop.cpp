#include "qdmd/error_prop.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdmd {

ErrorBudget ErrorBudget::preset(double eps_oe_h) {
    ErrorBudget b;
    b.eps_oe_h = eps_oe_h;
    b.eps_oe_d = eps_oe_h / 10.0;
    b.eps_sp = b.eps_oe_d / 100.0;
    b.eps_r = b.eps_sp / 10.0;
    b.preset_ratios = true;
    b.validate();
    return b;
}

void ErrorBudget::validate() const {
    if (eps_oe_h < 0 || eps_oe_d < 0 || eps_sp < 0 || eps_r < 0)
        throw std::invalid_argument("budget: error terms must be non-negative");
    if (preset_ratios) {
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
        if (!close(eps_oe_d, eps_oe_h / 10.0) || !close(eps_sp, eps_oe_d / 100.0) ||
            !close(eps_r, eps_sp / 10.0))
            throw std::invalid_argument("budget: preset ratio chain violated");
    }
}

EntryErrorBounds bound_entry_errors(const ErrorBudget& budget, double lambda_h, double lambda_d) {
    budget.validate();
    const double sp = budget.eps_sp;
    EntryErrorBounds out;
    out.eps_y = budget.eps_oe_h + lambda_h * (2.0 * sp + sp * sp);
    out.eps_x = budget.eps_oe_d + lambda_d * (2.0 * sp + sp * sp);
    return out;
}

ParamErrorBound bound_param_error(double eps_oe_h, const std::vector<SampleRecord>& low) {
    if (low.size() < 2) throw std::invalid_argument("param bound: need at least 2 samples");
    const int p = static_cast<int>(low.front().descriptors.size());
    ParamErrorBound out;
    out.bounds.resize(p);
    out.infinite.resize(p);
    for (int j = 0; j < p; ++j) {
        double lo = low.front().descriptors[j], hi = lo;
        for (const auto& s : low) {
            lo = std::min(lo, s.descriptors[j]);
            hi = std::max(hi, s.descriptors[j]);
        }
        const double range = hi - lo;
        if (range <= 0.0) {
            out.bounds[j] = std::numeric_limits<double>::infinity();
            out.infinite[j] = true;
        } else {
            out.bounds[j] = 2.0 * eps_oe_h / range;
            out.infinite[j] = false;
        }
    }
    return out;
}

double truncate_b_bits(double value, int b) {
    if (b < 1) throw std::invalid_argument("truncate: b must be at least 1");
    const double scale = std::ldexp(1.0, b);
    return std::trunc(value * scale) / scale;
}

TruncationSweep run_truncation_sweep(const std::vector<SampleRecord>& low,
                                     const std::vector<int>& subset,
                                     const std::vector<std::string>& pool_labels, int b_min,
                                     int b_max, bool perturb_design) {
    if (b_min < 1 || b_max < b_min) throw std::invalid_argument("sweep: bad bit range");
    TruncationSweep sweep;
    sweep.perturbed_design = perturb_design;

    RegressionFit exact = fit_samples(low, subset, pool_labels, true);
    if (exact.rank_deficient) throw std::invalid_argument("sweep: reference fit is rank-deficient");
    sweep.reference_couplings = exact.couplings;

    for (int b = b_min; b <= b_max; ++b) {
        std::vector<SampleRecord> perturbed = low;
        for (auto& s : perturbed) {
            s.energy = truncate_b_bits(s.energy, b);
            if (perturb_design)
                for (int j = 0; j < s.descriptors.size(); ++j)
                    s.descriptors[j] = truncate_b_bits(s.descriptors[j], b);
            s.noise = std::ldexp(1.0, -b);
        }
        RegressionFit fit = fit_samples(perturbed, subset, pool_labels, true);
        auto bound = bound_param_error(std::ldexp(1.0, -b), low);
        for (std::size_t j = 0; j < subset.size(); ++j) {
            SweepRow row;
            row.bits = b;
            row.coupling = exact.labels[j];
            row.observed = fit.rank_deficient
                               ? std::numeric_limits<double>::quiet_NaN()
                               : std::abs(fit.couplings[j] - exact.couplings[j]);
            row.bound = bound.bounds[subset[j]];
            row.ratio = row.observed / row.bound;
            sweep.rows.push_back(row);
        }
    }
    return sweep;
}

TargetBudget budget_from_target(double target, const std::vector<SampleRecord>& low) {
    if (target <= 0) throw std::invalid_argument("budget: target must be positive");
    const int p = static_cast<int>(low.front().descriptors.size());
    double min_range = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p; ++j) {
        double lo = low.front().descriptors[j], hi = lo;
        for (const auto& s : low) {
            lo = std::min(lo, s.descriptors[j]);
            hi = std::max(hi, s.descriptors[j]);
        }
        min_range = std::min(min_range, hi - lo);
    }
    if (!(min_range > 0)) throw std::invalid_argument("budget: zero descriptor range");
    TargetBudget out;
    out.eps_oe_h = target * min_range / 2.0;
    // b = ceil(log2(1/eps)); truncation is defined for b >= 1, so a looser
    // budget than half a unit still runs at one fraction bit.
    out.bits = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / out.eps_oe_h))));
    return out;
}

}  // namespace qdmd
