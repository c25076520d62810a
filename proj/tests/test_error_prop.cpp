#include "qdmd/error_prop.hpp"

#include <cmath>

#include "doctest.h"

using namespace qdmd;

namespace {

// Hubbard dimer eigenstate samples over the (hopping, docc) pool, the exact
// analog of fitting (t, U) couplings from low-energy data.
std::vector<SampleRecord> dimer_samples(double t, double U, std::vector<std::string>* labels) {
    auto spec = LatticeSpec::chain(2, 2);
    auto H = build_hubbard(spec, t, U);
    auto dec = diagonalize(H);
    DescriptorPool pool;
    pool.descriptors.push_back(build_descriptor(H.basis, spec, {DescriptorKind::TotalHopping}));
    pool.descriptors.push_back(
        build_descriptor(H.basis, spec, {DescriptorKind::TotalDoubleOccupancy}));
    auto ens = evaluate_states(dec, pool);
    if (labels) *labels = ens.labels;
    return sample_low_energy(ens, H.lambda, 4, SamplePolicy::Eigenstates);
}

}  // namespace

TEST_CASE("b-bit truncation basics") {
    CHECK(truncate_b_bits(0.75, 1) == doctest::Approx(0.5));
    CHECK(truncate_b_bits(-0.75, 2) == doctest::Approx(-0.75));  // exactly representable
    // Integer-arithmetic oracle for pi at b=10.
    const double pi = 3.14159265358979323846;
    const double expected = std::floor(pi * 1024.0) / 1024.0;
    CHECK(truncate_b_bits(pi, 10) == doctest::Approx(expected).epsilon(1e-16));
    CHECK_THROWS(truncate_b_bits(1.0, 0));
    // |out - in| <= 2^-b for either sign.
    for (double v : {2.7182818, -2.7182818, 0.001, -0.999}) {
        for (int b = 1; b <= 20; ++b) {
            const double w = truncate_b_bits(v, b);
            CHECK(std::abs(w - v) <= std::ldexp(1.0, -b));
        }
    }
}

TEST_CASE("entry error bounds follow the closed forms") {
    ErrorBudget zero_sp;
    zero_sp.eps_oe_h = 0.25;
    auto b1 = bound_entry_errors(zero_sp, 10.0, 1.0);
    CHECK(b1.eps_y == doctest::Approx(0.25));  // collapses to eps_oe_h

    ErrorBudget sp_only;
    sp_only.eps_sp = 0.1;
    auto b2 = bound_entry_errors(sp_only, 10.0, 1.0);
    CHECK(b2.eps_y == doctest::Approx(10.0 * (0.2 + 0.01)));  // = 2.1

    // Preset chain for the N=22 scenario: eps_oe_h = 0.003 * 22.
    auto preset = ErrorBudget::preset(0.003 * 22);
    CHECK(preset.eps_oe_d == doctest::Approx(0.0066));
    CHECK(preset.eps_sp == doctest::Approx(6.6e-5));
    CHECK(preset.eps_r == doctest::Approx(6.6e-6));
    auto b3 = bound_entry_errors(preset, 352.0, 1.0);
    CHECK(b3.eps_y == doctest::Approx(0.066 + 352.0 * (2 * 6.6e-5 + 6.6e-5 * 6.6e-5)));
    CHECK(b3.eps_x == doctest::Approx(0.0066 + 1.0 * (2 * 6.6e-5 + 6.6e-5 * 6.6e-5)));
}

TEST_CASE("parameter error bound from descriptor ranges") {
    std::vector<SampleRecord> samples(2);
    samples[0].descriptors = VectorXd(2);
    samples[0].descriptors << 0.0, 1.0;
    samples[1].descriptors = VectorXd(2);
    samples[1].descriptors << 4.0, 1.0;
    auto bound = bound_param_error(0.1, samples);
    CHECK(bound.bounds[0] == doctest::Approx(0.05));  // 2*0.1/4
    CHECK(bound.infinite[1]);                         // constant descriptor

    // Dimer ranges from the ED oracle.
    std::vector<std::string> labels;
    auto dimer = dimer_samples(1.0, 8.0, &labels);
    auto db = bound_param_error(0.01, dimer);
    REQUIRE(db.bounds.size() == 2);
    CHECK(!db.infinite[0]);
    CHECK(!db.infinite[1]);
    CHECK(db.bounds[0] > 0);
    CHECK(db.bounds[1] > 0);

    CHECK_THROWS(bound_param_error(0.1, {samples[0]}));  // needs >= 2 samples
}

TEST_CASE("truncation sweep satisfies the bound in every row") {
    std::vector<std::string> labels;
    auto samples = dimer_samples(2.0, 7.6, &labels);  // eV-scale couplings
    auto sweep = run_truncation_sweep(samples, {0, 1}, labels, 5, 15);
    REQUIRE(sweep.rows.size() == 2 * 11);
    for (const auto& row : sweep.rows) {
        CAPTURE(row.bits);
        CAPTURE(row.coupling);
        CHECK(row.observed <= row.bound);
        CHECK(row.ratio <= 1.0);
        CHECK(row.ratio >= 0.0);
    }
    CHECK(sweep.direction == "toward-zero");
}

TEST_CASE("truncation error vanishes at high precision") {
    std::vector<std::string> labels;
    auto samples = dimer_samples(1.0, 8.0, &labels);
    auto sweep = run_truncation_sweep(samples, {0, 1}, labels, 40, 40);
    for (const auto& row : sweep.rows) CHECK(row.observed < 1e-9);
}

TEST_CASE("budget inversion meets the requested coupling error") {
    std::vector<std::string> labels;
    auto samples = dimer_samples(2.0, 7.6, &labels);

    for (double target : {0.6, 4.0}) {  // the two targets of the fixed-budget study
        auto budget = budget_from_target(target, samples);
        CHECK(budget.eps_oe_h > 0);
        CHECK(budget.bits >= 1);
        // Running the truncation at the recommended depth keeps every observed
        // coupling error at or below the target.
        auto sweep = run_truncation_sweep(samples, {0, 1}, labels, budget.bits, budget.bits);
        for (const auto& row : sweep.rows) CHECK(row.observed <= target);
    }

    // Doubling the target halves the required precision 1/eps.
    auto a = budget_from_target(0.5, samples);
    auto b = budget_from_target(1.0, samples);
    CHECK(b.eps_oe_h == doctest::Approx(2.0 * a.eps_oe_h));
}

TEST_CASE("bound is linear in eps and inverse in range") {
    std::vector<SampleRecord> samples(3);
    for (int i = 0; i < 3; ++i) {
        samples[i].descriptors = VectorXd(1);
        samples[i].descriptors << 2.0 * i;
    }
    auto b1 = bound_param_error(0.1, samples);
    auto b2 = bound_param_error(0.2, samples);
    CHECK(b2.bounds[0] == doctest::Approx(2.0 * b1.bounds[0]));
    for (auto& s : samples) s.descriptors[0] *= 2.0;  // double the range
    auto b3 = bound_param_error(0.1, samples);
    CHECK(b3.bounds[0] == doctest::Approx(0.5 * b1.bounds[0]));
}

TEST_CASE("intercept immunity: constant response shifts never move couplings") {
    std::vector<std::string> labels;
    auto samples = dimer_samples(1.0, 6.0, &labels);
    auto base = fit_samples(samples, {0, 1}, labels, true);
    auto shifted = samples;
    for (auto& s : shifted) s.energy += 3.5;
    auto fit = fit_samples(shifted, {0, 1}, labels, true);
    CHECK((fit.couplings - base.couplings).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(fit.intercept == doctest::Approx(base.intercept + 3.5));
}

TEST_CASE("zero range rejected by the budget inversion") {
    std::vector<SampleRecord> samples(2);
    for (int i = 0; i < 2; ++i) {
        samples[i].descriptors = VectorXd(1);
        samples[i].descriptors << 1.0;  // constant
    }
    CHECK_THROWS(budget_from_target(0.5, samples));
}
