#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdmd {

/// Cost of one oracle or circuit stage. T counts are carried in long double:
/// breakdown parts stay exact well past 2^63 and first-quantized totals reach
/// ~1e29, inside the 64-bit mantissa's 10% envelope and printed exactly via
/// the 128-bit path when representable.
struct CircuitCost {
    long qubits = 0;
    long double t_count = 0.0L;
    std::vector<std::pair<std::string, long double>> parts;
};

struct BlockEncodingCost {
    long qubits = 0;
    long double t_count = 0.0L;
    double lambda = 0.0;  // block-encoding norm
    int ancillas = 0;
    double eps_r = 0.0;
};

/// Majorana-inspired SELECT encoding of the Fermi-Hubbard Hamiltonian:
/// Q = 2N + ceil(2 log2 N) + 4, T = 16N + 8 ceil(log2 2N + log2(2N/eps_R)) + 40.
BlockEncodingCost hubbard_block_encoding(int n, double eps_r, double t = 1.0, double u = 12.0);

/// Computational-basis initialization: same qubits, zero T gates.
CircuitCost init_cost(const BlockEncodingCost& be);

/// QSP-filtered reflector: Q = Q_UH + 3,
/// T = d T_UH + d ceil(48(2 log2 N + 6) + 10 + 4 log2(1/eps_R)).
CircuitCost theta_cost(const BlockEncodingCost& be, double delta, double eps, double eps_r, int n);

/// Amplitude-amplified state preparation: Q = Q_UH + 4,
/// T = ceil(1 + (pi/(2 asin(gamma(1-eps gamma))) - 1)/2) (2 T_UI + 2 T_Utheta).
/// `repetitions` overrides the bracket (e.g. the extrapolated N_iter).
CircuitCost state_prep_cost(const BlockEncodingCost& be, const CircuitCost& theta, double gamma,
                            double eps_sp, std::optional<long> repetitions = std::nullopt);

enum class EstimationMethod { COE, GOE, CSOE };
const char* to_string(EstimationMethod m);

struct EstimationPlan {
    EstimationMethod method = EstimationMethod::COE;
    long observables = 1;    // M
    int rdm_order = 1;       // nu, CSOE only
    double eps_oe_h = 0.0;
    double eps_oe_d = 0.0;
    double q = 0.1;          // aggregate failure probability
    double lambda_d = 1.0;   // descriptor block-encoding norm
    long double t_descriptor = 0.0L;  // T_{U_dj}; zero for Pauli-string RDMs
};

struct LogicalBudget {
    long qubits = 0;
    long double t_count = 0.0L;
    std::vector<std::pair<std::string, long double>> breakdown;
    std::vector<std::string> notes;  // alternative-interpretation reports
    std::string t_count_exact;       // decimal digits when within 128 bits
};

/// Formats a long double T count as an exact integer string when it fits in
/// 128 bits, otherwise scientific notation.
std::string format_t_count(long double t);

LogicalBudget coe_cost(const EstimationPlan& plan, const CircuitCost& sp,
                       const BlockEncodingCost& be);
LogicalBudget goe_cost(const EstimationPlan& plan, const CircuitCost& sp,
                       const BlockEncodingCost& be);
LogicalBudget csoe_cost_hubbard(const EstimationPlan& plan, const CircuitCost& sp, int n,
                                double lambda_h);
/// First-quantized variant with externally supplied state-preparation cost.
LogicalBudget csoe_cost_first_quantized(int nu, double n_planewaves, double electrons,
                                        double lambda_h, double eps_oe_h, double q,
                                        const CircuitCost& sp);

/// GOE's internal constants m = log(2 sqrt(M) lambda/eps) and
/// R = 18 m (54432 pi m sqrt(M) lambda/eps)^(1/2m); natural logarithms.
double goe_prefactor_R(long observables, double lambda_h, double eps_oe_h);

enum class ObservableSet { MinimalPerSite, Rdm };

/// Scenario parameters of the doped-Hubbard study: the ratio chain
/// eps_oe_h : eps_oe_d : eps_sp : eps_R = 1 : 1/10 : 1/1000 : 1/10000,
/// Lambda = 3pNt, delta = (Lambda - E0)/(2 lambda_H) with E0 = -0.765 t N,
/// q = 0.1, and the extrapolated amplitude-amplification repetition count.
struct ParameterPreset {
    int n = 22;
    double u_over_t = 12.0;
    double doping = 0.1;
    double t = 1.0;
    double lambda_h = 0.0;
    double lambda_cut = 0.0;  // Lambda
    double e0_estimate = 0.0;
    double delta = 0.0;
    double eps_oe_h = 0.0, eps_oe_d = 0.0, eps_sp = 0.0, eps_r = 0.0;
    double q = 0.1;
    double gamma = 1.0;
    long sp_repetitions = 1;  // N_iter; 1 for N <= 22 per the infidelity extrapolation

    long observable_count(ObservableSet set, int nu = 1) const;
};

ParameterPreset hubbard_preset(int n, double u_over_t, double p);

/// Full chain: block encoding -> theta -> state preparation -> method cost.
LogicalBudget logical_estimate(const ParameterPreset& preset, EstimationMethod method,
                               ObservableSet set, int nu = 1);

}  // namespace qdmd
