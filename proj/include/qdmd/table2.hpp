#pragma once

#include "qdmd/logical_cost.hpp"

#include <array>
#include <string_view>

namespace qdmd::table2 {

/// Reference resource table for the N = 22, U/t = 12, p = 0.1 doped-Hubbard
/// scenario. `set` is the observable family: "min" = 3 per site, "1-RDM" =
/// all one-body elements.

struct LogicalRow {
    std::string_view set;
    EstimationMethod method;
    long qubits;
    double t_count;
};

inline constexpr std::array<LogicalRow, 5> kLogical{{
    {"min", EstimationMethod::COE, 74, 2.654e12},
    {"min", EstimationMethod::GOE, 552, 3.694e14},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16},
}};

struct StageParams {
    int protocol;  // 15 = 15-to-1, 20 = 20-to-4
    int dx, dz, dm;
};

struct PhysicalRow {
    std::string_view set;
    EstimationMethod method;
    long logical_qubits;
    double logical_t;
    double p_phys;
    StageParams stage1, stage2;
    std::string_view layout;  // compact / intermediate / fast
    int distance;
    double physical_qubits;
    double time_s;
};

inline constexpr std::array<PhysicalRow, 48> kPhysical{{
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 13, 5, 5}, {15, 32, 12, 14}, "compact", 33, 2.855e5, 7.883e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 13, 5, 5}, {15, 32, 12, 14}, "intermediate", 33, 3.683e5, 4.379e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 13, 5, 5}, {15, 32, 12, 14}, "fast", 35, 4.635e5, 3.159e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 18, 8, 8}, {20, 33, 17, 19}, "compact", 33, 3.463e5, 7.883e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 18, 8, 8}, {20, 33, 17, 19}, "intermediate", 33, 4.291e5, 4.379e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-3, {15, 18, 8, 8}, {20, 33, 17, 19}, "fast", 34, 5.007e5, 1.261e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 6, 2, 2}, {15, 15, 5, 6}, "compact", 16, 6.570e4, 3.822e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 6, 2, 2}, {15, 15, 5, 6}, "intermediate", 16, 8.516e4, 2.123e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 6, 2, 2}, {15, 15, 5, 6}, "fast", 17, 1.079e5, 1.221e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 8, 2, 3}, {20, 16, 8, 9}, "compact", 16, 7.586e4, 3.822e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 8, 2, 3}, {20, 16, 8, 9}, "intermediate", 16, 9.532e4, 2.123e8},
    {"min", EstimationMethod::COE, 74, 2.654e12, 1e-4, {15, 8, 2, 3}, {20, 16, 8, 9}, "fast", 17, 1.183e5, 6.105e7},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-3, {15, 15, 6, 6}, {15, 36, 13, 15}, "compact", 40, 2.714e6, 1.330e11},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-3, {15, 15, 6, 6}, {15, 36, 13, 15}, "intermediate", 39, 3.425e6, 7.204e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-3, {15, 15, 6, 6}, {15, 36, 13, 15}, "fast", 41, 3.995e6, 4.174e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 7, 2, 3}, {15, 17, 6, 7}, "compact", 19, 6.111e5, 6.317e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 7, 2, 3}, {15, 17, 6, 7}, "intermediate", 19, 8.111e5, 3.509e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 7, 2, 3}, {15, 17, 6, 7}, "fast", 20, 9.487e5, 1.958e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 9, 3, 3}, {20, 18, 8, 10}, "compact", 19, 6.227e5, 6.317e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 9, 3, 3}, {20, 18, 8, 10}, "intermediate", 19, 8.227e5, 3.509e10},
    {"min", EstimationMethod::GOE, 552, 3.694e14, 1e-4, {15, 9, 3, 3}, {20, 18, 8, 10}, "fast", 20, 9.605e5, 9.235e9},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-3, {15, 14, 5, 6}, {15, 35, 13, 15}, "compact", 36, 3.452e5, 2.457e10},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-3, {15, 14, 5, 6}, {15, 35, 13, 15}, "intermediate", 36, 4.437e5, 1.365e10},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-3, {15, 14, 5, 6}, {15, 35, 13, 15}, "fast", 38, 5.522e5, 8.570e9},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 6, 2, 2}, {15, 17, 6, 6}, "compact", 18, 8.229e4, 1.229e10},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 6, 2, 2}, {15, 17, 6, 6}, "intermediate", 17, 9.627e4, 6.446e9},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 6, 2, 2}, {15, 17, 6, 6}, "fast", 18, 1.212e5, 3.489e9},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 9, 3, 3}, {20, 17, 8, 9}, "compact", 18, 9.439e4, 1.229e10},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 9, 3, 3}, {20, 17, 8, 9}, "intermediate", 17, 1.082e5, 6.446e9},
    {"1-RDM", EstimationMethod::COE, 74, 7.584e13, 1e-4, {15, 9, 3, 3}, {20, 17, 8, 9}, "fast", 18, 1.333e5, 1.725e9},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-3, {15, 15, 6, 6}, {15, 38, 15, 16}, "compact", 44, 8.194e7, 1.241e12},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-3, {15, 15, 6, 6}, {15, 38, 15, 16}, "intermediate", 44, 1.092e8, 6.895e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-3, {15, 15, 6, 6}, {15, 38, 15, 16}, "fast", 46, 1.208e8, 4.356e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 7, 2, 3}, {15, 18, 6, 7}, "compact", 22, 2.048e7, 6.205e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 7, 2, 3}, {15, 18, 6, 7}, "intermediate", 21, 2.488e7, 3.291e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 7, 2, 3}, {15, 18, 6, 7}, "fast", 22, 2.763e7, 1.661e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 10, 3, 4}, {20, 19, 8, 11}, "compact", 22, 2.050e7, 6.205e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 10, 3, 4}, {20, 19, 8, 11}, "intermediate", 21, 2.490e7, 3.291e11},
    {"1-RDM", EstimationMethod::GOE, 14097, 3.134e15, 1e-4, {15, 10, 3, 4}, {20, 19, 8, 11}, "fast", 22, 2.764e7, 9.480e10},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-3, {15, 16, 7, 6}, {15, 41, 17, 18}, "compact", 42, 3.980e5, 2.609e13},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-3, {15, 16, 7, 6}, {15, 41, 17, 18}, "intermediate", 42, 5.074e5, 1.450e13},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-3, {15, 16, 7, 6}, {15, 41, 17, 18}, "fast", 44, 6.282e5, 9.526e12},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 7, 2, 3}, {15, 20, 7, 8}, "compact", 21, 9.732e4, 1.305e13},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 7, 2, 3}, {15, 20, 7, 8}, "intermediate", 20, 1.143e5, 6.903e12},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 7, 2, 3}, {15, 20, 7, 8}, "fast", 21, 1.423e5, 4.142e12},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 10, 4, 4}, {20, 20, 10, 11}, "compact", 21, 1.128e5, 1.305e13},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 10, 4, 4}, {20, 20, 10, 11}, "intermediate", 20, 1.296e5, 6.903e12},
    {"1-RDM", EstimationMethod::CSOE, 61, 6.903e16, 1e-4, {15, 10, 4, 4}, {20, 20, 10, 11}, "fast", 21, 1.578e5, 2.088e12},
}};

/// Consumption-limited target quoted in the text for p_phys = 1e-4 with
/// enough factories: the fast layout at distance 15.
inline constexpr double kConsumptionLimitedFast1em4 = 3.98e7;

}  // namespace qdmd::table2
