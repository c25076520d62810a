#include "qdmd/lattice.hpp"

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

using namespace qdmd;

namespace {

// Independent dense oracle for the Hubbard dimer in the S_z = 0 sector.
// Basis ordering by packed configuration: |d,0> = 0b0011, |ud> = 0b0110,
// |du> = 0b1001, |0,d> = 0b1100 -- matches FockBasis ascending order.
MatrixXd dimer_oracle(double t, double U) {
    MatrixXd h = MatrixXd::Zero(4, 4);
    h(0, 0) = U;
    h(3, 3) = U;
    // c+_{1s} c_{0s} moves between double occupancy and singly occupied pairs.
    h(0, 1) = h(1, 0) = -t;
    h(0, 2) = h(2, 0) = t;
    h(3, 1) = h(1, 3) = t;
    h(3, 2) = h(2, 3) = -t;
    return h;
}

// Dense Heisenberg chain oracle built from explicit Pauli kron products.
MatrixXd heisenberg_oracle(int n, double J, bool periodic = false) {
    const int dim = 1 << n;
    auto sz = [](int state, int site) { return ((state >> site) & 1) ? 0.5 : -0.5; };
    MatrixXd h = MatrixXd::Zero(dim, dim);
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < n; ++i) bonds.push_back({i, i + 1});
    if (periodic && n > 2) bonds.push_back({n - 1, 0});
    for (auto [i, j] : bonds) {
        for (int s = 0; s < dim; ++s) {
            h(s, s) += J * sz(s, i) * sz(s, j);
            const bool ui = (s >> i) & 1, uj = (s >> j) & 1;
            if (ui != uj) {
                const int flipped = s ^ (1 << i) ^ (1 << j);
                h(flipped, s) += 0.5 * J;
            }
        }
    }
    return h;
}

}  // namespace

TEST_CASE("hubbard dimer free-fermion limit has ground energy -2t") {
    auto spec = LatticeSpec::chain(2, 2);
    auto H = build_hubbard(spec, 1.0, 0.0);
    auto d = diagonalize(H);
    CHECK(d.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("hubbard dimer interacting ground energy matches closed form") {
    const double t = 1.0, U = 8.0;
    auto H = build_hubbard(LatticeSpec::chain(2, 2), t, U);
    auto d = diagonalize(H);
    const double expected = (U - std::sqrt(U * U + 16.0 * t * t)) / 2.0;
    CHECK(d.eigenvalues[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("hubbard dimer spectrum matches the dense oracle") {
    const double t = 1.3, U = 5.7;
    auto H = build_hubbard(LatticeSpec::chain(2, 2), t, U);
    REQUIRE(H.dim() == 4);
    auto d = diagonalize(H);
    Eigen::SelfAdjointEigenSolver<MatrixXd> oracle(dimer_oracle(t, U));
    for (int k = 0; k < 4; ++k)
        CHECK(d.eigenvalues[k] == doctest::Approx(oracle.eigenvalues()[k]).epsilon(1e-10));
}

TEST_CASE("hubbard chain N=4 strong coupling spectrum is real and particle-hole symmetric") {
    const int n = 4;
    const double U = 12.0;
    auto spec = LatticeSpec::chain(n, n);
    auto H = build_hubbard(spec, 1.0, U);
    auto vals = spectrum_of(H);
    // Particle-hole map on the half-filled sector sends E -> E (spectrum is
    // symmetric about N_bonds-independent midpoint 2E_shift); check via the
    // transformation H -> H under c -> (-1)^i c+: spectrum of H and of
    // PH-transformed H coincide. The PH transform fixes the sector, so compare
    // the sorted spectrum to itself reflected about U * N/2 - lambda-free term.
    // For the half-filled Hubbard chain the spectrum obeys E and U*N_d match:
    // sum of min and max pairs equals trace/dim * 2 only for symmetric spectra.
    const double mid = (vals[0] + vals[vals.size() - 1]);
    for (int k = 1; k < vals.size() / 2; ++k) {
        const double pair = vals[k] + vals[vals.size() - 1 - k];
        CHECK(pair == doctest::Approx(mid).epsilon(5e-2).scale(U));
    }
    CHECK(H.hermiticity_violation() <= 1e-12 * H.lambda);
}

TEST_CASE("hubbard t=0 limit spectrum is U times double occupancy") {
    auto spec = LatticeSpec::chain(4, 4);
    // t must be positive; emulate t=0 with tiny t and compare degeneracy shells.
    auto H = build_hubbard(spec, 1e-9, 6.0);
    auto vals = spectrum_of(H);
    std::map<int, int> shell_counts;
    for (int i = 0; i < vals.size(); ++i) {
        const int m = static_cast<int>(std::lround(vals[i] / 6.0));
        CHECK(std::abs(vals[i] - 6.0 * m) < 1e-6);
        shell_counts[m]++;
    }
    // Exact shell degeneracies for N=4 half filling S_z=0: counting
    // configurations with m double occupancies.
    // m=0: choose 2 up sites of 4, down on the rest: C(4,2)=6 -> times
    // arrangements: up mask fixed 2, down = complement choices C(2... use
    // combinatorial count: sum over up/down masks with overlap m.
    int expected_m0 = 0, expected_m1 = 0, expected_m2 = 0;
    for (int up = 0; up < 16; ++up) {
        if (std::popcount(static_cast<unsigned>(up)) != 2) continue;
        for (int down = 0; down < 16; ++down) {
            if (std::popcount(static_cast<unsigned>(down)) != 2) continue;
            const int overlap = std::popcount(static_cast<unsigned>(up & down));
            if (overlap == 0) ++expected_m0;
            if (overlap == 1) ++expected_m1;
            if (overlap == 2) ++expected_m2;
        }
    }
    CHECK(shell_counts[0] == expected_m0);
    CHECK(shell_counts[1] == expected_m1);
    CHECK(shell_counts[2] == expected_m2);
}

TEST_CASE("heisenberg two-spin spectrum is the singlet-triplet split") {
    auto spec = LatticeSpec::chain(2, 2);
    auto H = build_heisenberg(spec, 1.0, 0.0, 1);  // S_z = 0 sector
    auto d = diagonalize(H);
    REQUIRE(d.count() == 2);
    CHECK(d.eigenvalues[0] == doctest::Approx(-0.75));
    CHECK(d.eigenvalues[1] == doctest::Approx(0.25));
    auto Hup = build_heisenberg(spec, 1.0, 0.0, 2);  // fully polarized
    auto dup = diagonalize(Hup);
    CHECK(dup.eigenvalues[0] == doctest::Approx(0.25));
}

TEST_CASE("heisenberg with J=0 is a constant") {
    auto H = build_heisenberg(LatticeSpec::chain(2, 2), 0.0, 5.0, 1);
    auto d = diagonalize(H);
    for (int k = 0; k < d.count(); ++k) CHECK(d.eigenvalues[k] == doctest::Approx(5.0));
}

TEST_CASE("heisenberg N=4 matches the Pauli-kron oracle across sectors") {
    auto spec = LatticeSpec::chain(4, 4);
    std::vector<double> ours;
    for (int up = 0; up <= 4; ++up) {
        auto H = build_heisenberg(spec, 1.0, 0.0, up);
        auto vals = spectrum_of(H);
        for (int i = 0; i < vals.size(); ++i) ours.push_back(vals[i]);
    }
    std::sort(ours.begin(), ours.end());
    Eigen::SelfAdjointEigenSolver<MatrixXd> oracle(heisenberg_oracle(4, 1.0));
    REQUIRE(static_cast<int>(ours.size()) == 16);
    for (int k = 0; k < 16; ++k)
        CHECK(ours[k] == doctest::Approx(oracle.eigenvalues()[k]).epsilon(1e-10));
}

TEST_CASE("descriptor expectations on occupation eigenstates") {
    auto spec = LatticeSpec::chain(2, 2);
    auto basis = FockBasis::fermionic(2, 1, 1);
    auto docc = build_descriptor(basis, spec, {DescriptorKind::TotalDoubleOccupancy});
    auto hop = build_descriptor(basis, spec, {DescriptorKind::TotalHopping});

    auto both_on_site0 = product_state(basis, "2 ");
    CHECK(expectation(docc, both_on_site0) == doctest::Approx(1.0));
    CHECK(both_on_site0.product_m == 1);
    CHECK(expectation(hop, both_on_site0) == doctest::Approx(0.0));

    auto ud = product_state(basis, "ud");
    CHECK(expectation(docc, ud) == doctest::Approx(0.0));
    CHECK(expectation(hop, ud) == doctest::Approx(0.0));
}

TEST_CASE("spin-spin descriptor on the Neel state gives -1/4") {
    auto spec = LatticeSpec::chain(4, 4);
    auto basis = FockBasis::fermionic(4, 2, 2);
    auto ss = build_descriptor(basis, spec, {DescriptorKind::SpinSpin, 0, 1});
    auto neel = product_state(basis, neel_config(4));
    CHECK(neel.product_m == 0);
    CHECK(expectation(ss, neel) == doctest::Approx(-0.25));
}

TEST_CASE("product state rejects configurations outside the sector") {
    auto basis = FockBasis::fermionic(2, 1, 1);
    CHECK_THROWS(product_state(basis, "u "));   // wrong particle count
    CHECK_THROWS(product_state(basis, "uu"));   // wrong S_z
}

TEST_CASE("expectation of eigenpairs returns eigenvalues") {
    auto H = build_hubbard(LatticeSpec::chain(3, 3), 1.0, 4.0);
    auto d = diagonalize(H);
    for (int k = 0; k < d.count(); k += 3) {
        auto psi = d.eigenstate(k);
        CHECK(expectation(H, psi) == doctest::Approx(d.eigenvalues[k]).epsilon(1e-10));
    }
    // Subnormalized states divide by the norm, per the functional definition.
    auto psi = d.eigenstate(0);
    psi.amplitudes *= 0.3;
    psi.subnormalized = true;
    CHECK(expectation(H, psi) == doctest::Approx(d.eigenvalues[0]).epsilon(1e-10));
}

TEST_CASE("equal superposition expectation matches a direct matrix-vector oracle") {
    auto spec = LatticeSpec::chain(2, 2);
    auto H = build_hubbard(spec, 1.0, 3.0);
    auto basis = H.basis;
    Wavefunction w;
    w.basis = basis;
    w.amplitudes = VectorXcd::Zero(4);
    w.amplitudes[basis->find(0b0110)] = std::sqrt(0.5);
    w.amplitudes[basis->find(0b1001)] = std::sqrt(0.5);
    MatrixXd oracle = dimer_oracle(1.0, 3.0);
    VectorXd v = VectorXd::Zero(4);
    v[1] = std::sqrt(0.5);
    v[2] = std::sqrt(0.5);
    CHECK(expectation(H, w) == doctest::Approx(v.dot(oracle * v)).epsilon(1e-12));
}

TEST_CASE("hermiticity and spectral containment over random instances") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> tdist(0.5, 2.0), udist(0.0, 12.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto spec = LatticeSpec::chain(n, n);
        auto H = build_hubbard(spec, tdist(rng), udist(rng));
        CHECK(H.hermiticity_violation() <= 1e-12 * H.lambda);
        auto vals = spectrum_of(H);
        CHECK(vals[0] >= -H.lambda - 1e-9);
        CHECK(vals[vals.size() - 1] <= H.lambda + 1e-9);
    }
}

TEST_CASE("sector block-diagonality: operators never map outside their sector") {
    // Apply H to basis states and confirm support stays inside the basis:
    // guaranteed by construction (matrix is square on the sector), so check
    // instead that building with a mismatched sector electron count throws.
    auto spec = LatticeSpec::chain(3, 3);
    CHECK_THROWS(build_hubbard(spec, 1.0, 2.0, std::make_pair(3, 1)));
    LatticeSpec bad = spec;
    bad.electrons = 7;  // > 2N
    CHECK_THROWS(build_hubbard(bad, 1.0, 2.0));
}

TEST_CASE("heisenberg limit: lowest 2^N hubbard levels track the spin model") {
    // Half filling, strong coupling: lowest 2^N eigenvalues across S_z sectors
    // match Heisenberg with J = 4t^2/U up to O(N t^3/U^2).
    const int n = 4;
    for (double U : {8.0, 12.0, 24.0}) {
        auto spec = LatticeSpec::chain(n, n);
        auto sectors = diagonalize_sectors(spec, 1.0, U);
        auto hub = merged_spectrum(sectors);
        const double J = 4.0 / U;
        std::vector<double> heis;
        for (int up = 0; up <= n; ++up) {
            auto Hh = build_heisenberg(spec, J, 0.0, up);
            auto vals = spectrum_of(Hh);
            for (int i = 0; i < vals.size(); ++i) heis.push_back(vals[i]);
        }
        std::sort(heis.begin(), heis.end());
        const double shift = -J * spec.bonds().size() / 4.0;  // S.S - 1/4 convention
        const double tol = 10.0 * n / (U * U);
        for (int k = 0; k < (1 << n); ++k)
            CHECK(std::abs(hub[k] - (heis[k] + shift)) <= tol);
    }
}

TEST_CASE("lanczos path agrees with the dense path") {
    // Force the iterative path by requesting lowest-k on a sector above the
    // dense cap? N<=4 sectors are small, so instead compare lowest-k dense
    // results against a hand-run large-k Lanczos on the same operator via the
    // public interface with a shrunken cap is not available; use a moderate
    // sector and check partial equals head of full.
    auto spec = LatticeSpec::chain(4, 4);
    auto H = build_hubbard(spec, 1.0, 6.0);
    auto full = diagonalize(H);
    auto part = diagonalize(H, 5);
    REQUIRE(part.count() == 5);
    for (int k = 0; k < 5; ++k)
        CHECK(part.eigenvalues[k] == doctest::Approx(full.eigenvalues[k]).epsilon(1e-10));
}

TEST_CASE("eigenvector canonicalization is deterministic") {
    auto H = build_hubbard(LatticeSpec::chain(3, 3), 1.0, 4.0);
    auto a = diagonalize(H);
    auto b = diagonalize(H);
    CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
    // Largest-magnitude amplitude (ties by lowest index) is positive.
    for (int c = 0; c < a.eigenvectors.cols(); ++c) {
        int arg = 0;
        double best = -1.0;
        for (int r = 0; r < a.eigenvectors.rows(); ++r) {
            const double v = std::abs(a.eigenvectors(r, c));
            if (v > best + 1e-14) {
                best = v;
                arg = r;
            }
        }
        CHECK(a.eigenvectors(arg, c) > 0.0);
    }
}

TEST_CASE("orthonormality and residual invariants of decompositions") {
    auto H = build_hubbard(LatticeSpec::ladder(4, 4), 1.0, 8.0);
    auto d = diagonalize(H);
    MatrixXd gram = d.eigenvectors.transpose() * d.eigenvectors;
    CHECK((gram - MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(d.max_residual <= 1e-10 * H.lambda);
    // Ascending eigenvalues.
    for (int k = 1; k < d.count(); ++k) CHECK(d.eigenvalues[k] >= d.eigenvalues[k - 1] - 1e-12);
}
