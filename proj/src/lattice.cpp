#include "qdmd/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>

namespace qdmd {

namespace {

std::uint64_t lowest_mask_with_popcount(int bits) {
    return bits == 0 ? 0ull : ((1ull << bits) - 1ull);
}

// Next bit permutation with the same popcount (Gosper), masks of `width` bits.
std::uint64_t next_permutation_mask(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -(~t)) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<std::uint64_t> masks_with_popcount(int width, int count) {
    std::vector<std::uint64_t> out;
    if (count < 0 || count > width) return out;
    if (count == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t v = lowest_mask_with_popcount(count);
    const std::uint64_t limit = 1ull << width;
    while (v < limit) {
        out.push_back(v);
        if (v == (lowest_mask_with_popcount(count) << (width - count))) break;
        v = next_permutation_mask(v);
    }
    return out;
}

// Interleave per-site up/down masks into the mode bitmask (mode = 2*site+spin).
std::uint64_t pack_config(std::uint64_t up, std::uint64_t down, int sites) {
    std::uint64_t c = 0;
    for (int s = 0; s < sites; ++s) {
        if ((up >> s) & 1ull) c |= 1ull << (2 * s);
        if ((down >> s) & 1ull) c |= 1ull << (2 * s + 1);
    }
    return c;
}

struct FermiOp {
    int mode;
    bool create;
};

// Applies a product of creation/annihilation operators, rightmost first.
// Returns the resulting configuration and Jordan-Wigner sign, or nullopt if
// the string annihilates the state.
std::optional<std::pair<std::uint64_t, int>> apply_string(std::uint64_t s,
                                                          std::span<const FermiOp> ops) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const std::uint64_t bit = 1ull << it->mode;
        const bool occupied = s & bit;
        if (it->create == occupied) return std::nullopt;
        const std::uint64_t below = s & (bit - 1);
        if (std::popcount(below) & 1) sign = -sign;
        s ^= bit;
    }
    return std::make_pair(s, sign);
}

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_string_terms(Triplets& trip, const FockBasis& basis, std::span<const FermiOp> ops,
                      double coeff) {
    for (int col = 0; col < basis.dim(); ++col) {
        auto r = apply_string(basis.state(col), ops);
        if (!r) continue;
        const int row = basis.find(r->first);
        if (row < 0) continue;  // outside the sector (possible on restricted bases)
        trip.emplace_back(row, col, coeff * r->second);
    }
}

void add_hopping(Triplets& trip, const FockBasis& basis, int mode_a, int mode_b, double coeff) {
    const FermiOp fwd[] = {{mode_a, true}, {mode_b, false}};
    const FermiOp bwd[] = {{mode_b, true}, {mode_a, false}};
    add_string_terms(trip, basis, fwd, coeff);
    add_string_terms(trip, basis, bwd, coeff);
}

SparseMat assemble(int dim, Triplets& trip) {
    SparseMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

void add_spin_spin(Triplets& trip, const FockBasis& basis, int i, int j, double coeff) {
    // Sz_i Sz_j (diagonal) + (S+_i S-_j + S-_i S+_j)/2.
    for (int col = 0; col < basis.dim(); ++col) {
        const std::uint64_t s = basis.state(col);
        const double szi = 0.5 * (FockBasis::up_occupied(s, i) - FockBasis::down_occupied(s, i));
        const double szj = 0.5 * (FockBasis::up_occupied(s, j) - FockBasis::down_occupied(s, j));
        if (szi != 0.0 && szj != 0.0) trip.emplace_back(col, col, coeff * szi * szj);
    }
    const FermiOp up_down[] = {{2 * i, true}, {2 * i + 1, false}, {2 * j + 1, true}, {2 * j, false}};
    const FermiOp down_up[] = {{2 * i + 1, true}, {2 * i, false}, {2 * j, true}, {2 * j + 1, false}};
    add_string_terms(trip, basis, up_down, 0.5 * coeff);
    add_string_terms(trip, basis, down_up, 0.5 * coeff);
}

void canonicalize_columns(MatrixXd& vecs) {
    for (int c = 0; c < vecs.cols(); ++c) {
        int arg = 0;
        double best = -1.0;
        for (int r = 0; r < vecs.rows(); ++r) {
            const double a = std::abs(vecs(r, c));
            if (a > best + 1e-14) {
                best = a;
                arg = r;
            }
        }
        if (vecs(arg, c) < 0) vecs.col(c) = -vecs.col(c);
    }
}

// Lanczos with full reorthogonalization; returns the lowest-k Ritz pairs.
void lanczos_lowest(const ManyBodyOperator& op, int k, VectorXd& values, MatrixXd& vectors,
                    double& max_residual) {
    const int n = op.dim();
    const int m_max = std::min<int>(n, std::max(600, 4 * k));
    const double tol = 1e-11 * std::max(1.0, op.lambda);

    MatrixXd V(n, m_max);
    VectorXd alpha(m_max), beta(m_max);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss;
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    v.normalize();
    V.col(0) = v;

    int m = 0;
    VectorXd ritz;
    MatrixXd tvec;
    for (int j = 0; j < m_max; ++j) {
        VectorXd w = op.apply(VectorXd(V.col(j)));
        if (j > 0) w -= beta[j - 1] * V.col(j - 1);
        alpha[j] = V.col(j).dot(w);
        w -= alpha[j] * V.col(j);
        // Two passes of reorthogonalization against the whole block.
        for (int pass = 0; pass < 2; ++pass) {
            VectorXd h = V.leftCols(j + 1).transpose() * w;
            w -= V.leftCols(j + 1) * h;
        }
        beta[j] = w.norm();
        m = j + 1;
        const bool breakdown = beta[j] < 1e-13 * std::max(1.0, op.lambda);
        const bool last = (j == m_max - 1) || breakdown;
        const bool check = last || (m >= std::max(2 * k, 32) && m % 16 == 0);
        if (check) {
            Eigen::SelfAdjointEigenSolver<MatrixXd> small;
            MatrixXd T = MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            small.compute(T);
            if (m >= k) {
                double worst = 0.0;
                for (int i = 0; i < k; ++i)
                    worst = std::max(worst, std::abs(beta[m - 1] * small.eigenvectors()(m - 1, i)));
                if (worst < tol || last) {
                    ritz = small.eigenvalues().head(k);
                    tvec = small.eigenvectors().leftCols(k);
                    break;
                }
            } else if (last) {
                const int kk = std::min(k, m);
                ritz = small.eigenvalues().head(kk);
                tvec = small.eigenvectors().leftCols(kk);
                break;
            }
        }
        if (breakdown) {
            // Restart direction orthogonal to the current block.
            VectorXd r(n);
            for (int i = 0; i < n; ++i) r[i] = gauss(rng);
            for (int pass = 0; pass < 2; ++pass) {
                VectorXd h = V.leftCols(m).transpose() * r;
                r -= V.leftCols(m) * h;
            }
            if (r.norm() < 1e-12) break;
            r.normalize();
            if (j + 1 < m_max) V.col(j + 1) = r;
            beta[j] = 0.0;
        } else if (j + 1 < m_max) {
            V.col(j + 1) = w / beta[j];
        }
    }
    if (ritz.size() == 0) throw std::runtime_error("lanczos: no Ritz pairs produced");

    vectors = V.leftCols(m) * tvec;
    values = ritz;
    canonicalize_columns(vectors);
    max_residual = 0.0;
    for (int i = 0; i < values.size(); ++i) {
        VectorXd r = op.apply(VectorXd(vectors.col(i))) - values[i] * vectors.col(i);
        max_residual = std::max(max_residual, r.norm());
    }
    if (max_residual > 1e-9 * std::max(1.0, op.lambda))
        throw std::runtime_error("lanczos: not converged, residual " + std::to_string(max_residual));
}

}  // namespace

// ---- LatticeSpec --------------------------------------------------------

LatticeSpec LatticeSpec::chain(int n, int electrons, Boundary b) {
    LatticeSpec s;
    s.sites = n;
    s.geometry = Geometry::Chain;
    s.boundary = b;
    s.electrons = electrons;
    s.hole_doping = n > 0 ? 1.0 - static_cast<double>(electrons) / n : 0.0;
    s.validate();
    return s;
}

LatticeSpec LatticeSpec::ladder(int n, int electrons, Boundary b) {
    LatticeSpec s = chain(n, electrons, b);
    s.geometry = Geometry::Ladder2xL;
    s.validate();
    return s;
}

LatticeSpec LatticeSpec::doped(int n, Geometry g, double p, Boundary b) {
    LatticeSpec s;
    s.sites = n;
    s.geometry = g;
    s.boundary = b;
    s.hole_doping = p;
    s.electrons = static_cast<int>(std::lround((1.0 - p) * n));
    s.validate();
    return s;
}

void LatticeSpec::validate() const {
    if (sites < 2) throw std::invalid_argument("lattice: need at least 2 sites");
    if (geometry == Geometry::Ladder2xL && sites % 2 != 0)
        throw std::invalid_argument("lattice: ladder needs an even site count");
    if (hole_doping < 0.0 || hole_doping >= 1.0)
        throw std::invalid_argument("lattice: doping must satisfy 0 <= p < 1");
    if (electrons < 0 || electrons > 2 * sites)
        throw std::invalid_argument("lattice: electron count exceeds 2N");
}

std::vector<std::pair<int, int>> LatticeSpec::bonds() const {
    std::vector<std::pair<int, int>> out;
    if (geometry == Geometry::Chain) {
        for (int i = 0; i + 1 < sites; ++i) out.emplace_back(i, i + 1);
        if (boundary == Boundary::Periodic && sites > 2) out.emplace_back(sites - 1, 0);
    } else {
        const int rungs = sites / 2;
        for (int r = 0; r < rungs; ++r) out.emplace_back(2 * r, 2 * r + 1);
        for (int r = 0; r + 1 < rungs; ++r) {
            out.emplace_back(2 * r, 2 * (r + 1));
            out.emplace_back(2 * r + 1, 2 * (r + 1) + 1);
        }
        if (boundary == Boundary::Periodic && rungs > 2) {
            out.emplace_back(2 * (rungs - 1), 0);
            out.emplace_back(2 * (rungs - 1) + 1, 1);
        }
    }
    return out;
}

// ---- FockBasis ----------------------------------------------------------

std::shared_ptr<const FockBasis> FockBasis::fermionic(int sites, int n_up, int n_down) {
    if (sites < 1 || sites > 30) throw std::invalid_argument("basis: unsupported site count");
    if (n_up < 0 || n_up > sites || n_down < 0 || n_down > sites)
        throw std::invalid_argument("basis: invalid sector occupation");
    auto b = std::shared_ptr<FockBasis>(new FockBasis());
    b->sites_ = sites;
    b->n_up_ = n_up;
    b->n_down_ = n_down;
    const auto ups = masks_with_popcount(sites, n_up);
    const auto downs = masks_with_popcount(sites, n_down);
    if (static_cast<std::int64_t>(ups.size()) * static_cast<std::int64_t>(downs.size()) >
        kDimensionCap)
        throw std::invalid_argument("basis: sector dimension exceeds the configured cap");
    b->states_.reserve(ups.size() * downs.size());
    for (auto u : ups)
        for (auto d : downs) b->states_.push_back(pack_config(u, d, sites));
    std::sort(b->states_.begin(), b->states_.end());
    return b;
}

std::shared_ptr<const FockBasis> FockBasis::spin_half(int sites, int n_up) {
    if (n_up < 0 || n_up > sites) throw std::invalid_argument("basis: invalid spin sector");
    auto b = std::shared_ptr<FockBasis>(new FockBasis());
    b->sites_ = sites;
    b->n_up_ = n_up;
    b->n_down_ = sites - n_up;
    b->spin_only_ = true;
    for (auto u : masks_with_popcount(sites, n_up)) {
        const std::uint64_t down = ~u & lowest_mask_with_popcount(sites);
        b->states_.push_back(pack_config(u, down, sites));
    }
    std::sort(b->states_.begin(), b->states_.end());
    return b;
}

int FockBasis::find(std::uint64_t config) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), config);
    if (it == states_.end() || *it != config) return -1;
    return static_cast<int>(it - states_.begin());
}

bool FockBasis::same_sector(const FockBasis& other) const {
    return sites_ == other.sites_ && n_up_ == other.n_up_ && n_down_ == other.n_down_ &&
           spin_only_ == other.spin_only_;
}

int FockBasis::double_occupancy(std::uint64_t config, int sites) {
    int m = 0;
    for (int s = 0; s < sites; ++s)
        if (up_occupied(config, s) && down_occupied(config, s)) ++m;
    return m;
}

// ---- ManyBodyOperator ---------------------------------------------------

VectorXcd ManyBodyOperator::apply(const VectorXcd& v) const {
    VectorXd re = matrix * v.real();
    VectorXd im = matrix * v.imag();
    VectorXcd out(v.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

double ManyBodyOperator::hermiticity_violation() const {
    SparseMat diff = SparseMat(matrix.transpose()) - matrix;
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMat::InnerIterator it(diff, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

// ---- Builders -----------------------------------------------------------

ManyBodyOperator build_hubbard(const LatticeSpec& spec, double t, double U,
                               std::optional<std::pair<int, int>> sector) {
    spec.validate();
    if (t <= 0) throw std::invalid_argument("hubbard: t must be positive");
    if (U < 0) throw std::invalid_argument("hubbard: U must be non-negative");
    int n_up, n_down;
    if (sector) {
        n_up = sector->first;
        n_down = sector->second;
        if (n_up + n_down != spec.electrons)
            throw std::invalid_argument("hubbard: sector particle count mismatch");
    } else {
        n_up = (spec.electrons + 1) / 2;
        n_down = spec.electrons - n_up;
    }
    auto basis = FockBasis::fermionic(spec.sites, n_up, n_down);

    Triplets trip;
    for (auto [i, j] : spec.bonds()) {
        for (int spin = 0; spin < 2; ++spin)
            add_hopping(trip, *basis, 2 * i + spin, 2 * j + spin, -t);
    }
    for (int col = 0; col < basis->dim(); ++col) {
        const int m = FockBasis::double_occupancy(basis->state(col), spec.sites);
        if (m > 0) trip.emplace_back(col, col, U * m);
    }

    ManyBodyOperator op;
    op.basis = basis;
    op.matrix = assemble(basis->dim(), trip);
    op.lambda = 4.0 * spec.sites * t + spec.sites * U;
    op.units = "t";
    op.label = "hubbard";
    return op;
}

ManyBodyOperator build_heisenberg(const LatticeSpec& spec, double J, double c,
                                  std::optional<int> n_up) {
    spec.validate();
    const int up = n_up.value_or((spec.sites + 1) / 2);
    auto basis = FockBasis::spin_half(spec.sites, up);

    Triplets trip;
    const auto bonds = spec.bonds();
    for (auto [i, j] : bonds) add_spin_spin(trip, *basis, i, j, J);
    for (int col = 0; col < basis->dim(); ++col) trip.emplace_back(col, col, c);

    ManyBodyOperator op;
    op.basis = basis;
    op.matrix = assemble(basis->dim(), trip);
    op.lambda = 0.75 * std::abs(J) * bonds.size() + std::abs(c);
    op.units = "J";
    op.label = "heisenberg";
    return op;
}

ManyBodyOperator build_descriptor(std::shared_ptr<const FockBasis> basis, const LatticeSpec& spec,
                                  const DescriptorSpec& d) {
    const int sites = basis->sites();
    Triplets trip;
    ManyBodyOperator op;
    op.basis = basis;
    op.units = "dimensionless";
    switch (d.kind) {
        case DescriptorKind::TotalHopping: {
            const auto bonds = spec.bonds();
            for (auto [i, j] : bonds)
                for (int spin = 0; spin < 2; ++spin)
                    add_hopping(trip, *basis, 2 * i + spin, 2 * j + spin, 1.0);
            op.lambda = 2.0 * bonds.size();
            op.label = "total_hopping";
            break;
        }
        case DescriptorKind::TotalDoubleOccupancy: {
            for (int col = 0; col < basis->dim(); ++col) {
                const int m = FockBasis::double_occupancy(basis->state(col), sites);
                if (m > 0) trip.emplace_back(col, col, static_cast<double>(m));
            }
            op.lambda = sites;
            op.label = "total_double_occupancy";
            break;
        }
        case DescriptorKind::SpinSpin: {
            if (d.i < 0 || d.j < 0 || d.i >= sites || d.j >= sites || d.i == d.j)
                throw std::invalid_argument("descriptor: spin-spin site indices out of range");
            add_spin_spin(trip, *basis, d.i, d.j, 1.0);
            op.lambda = 0.75;
            op.label = "spin_spin_" + std::to_string(d.i) + "_" + std::to_string(d.j);
            break;
        }
        case DescriptorKind::RdmElement: {
            const int modes = 2 * sites;
            if (d.i < 0 || d.j < 0 || d.i >= modes || d.j >= modes)
                throw std::invalid_argument("descriptor: rdm mode indices out of range");
            if (d.i == d.j) {
                for (int col = 0; col < basis->dim(); ++col)
                    if ((basis->state(col) >> d.i) & 1ull) trip.emplace_back(col, col, 1.0);
                op.label = "n_" + std::to_string(d.i);
            } else {
                add_hopping(trip, *basis, d.i, d.j, 1.0);
                op.label = "rdm_" + std::to_string(d.i) + "_" + std::to_string(d.j);
            }
            op.lambda = 1.0;
            break;
        }
    }
    op.matrix = assemble(basis->dim(), trip);
    return op;
}

ManyBodyOperator total_spin_spin(std::shared_ptr<const FockBasis> basis,
                                 const LatticeSpec& spec) {
    Triplets trip;
    for (auto [i, j] : spec.bonds()) add_spin_spin(trip, *basis, i, j, 1.0);
    ManyBodyOperator op;
    op.basis = basis;
    op.matrix = assemble(basis->dim(), trip);
    op.lambda = 0.75 * spec.bonds().size();
    op.units = "dimensionless";
    op.label = "total_spin_spin";
    return op;
}

std::vector<DescriptorSpec> enumerate_rdm1(int sites) {
    std::vector<DescriptorSpec> out;
    const int modes = 2 * sites;
    for (int p = 0; p < modes; ++p) out.push_back({DescriptorKind::RdmElement, p, p});
    for (int p = 0; p < modes; ++p)
        for (int q = p + 1; q < modes; ++q) out.push_back({DescriptorKind::RdmElement, p, q});
    return out;
}

// ---- Diagonalization ----------------------------------------------------

SpectralDecomposition diagonalize(const ManyBodyOperator& op, int lowest_k) {
    const int n = op.dim();
    if (n > kDimensionCap) throw std::invalid_argument("diagonalize: dimension cap exceeded");
    SpectralDecomposition out;
    out.basis = op.basis;
    out.lambda = op.lambda;

    const bool partial = lowest_k >= 0 && lowest_k < n;
    if (!partial || n <= kDenseSolverCap) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(MatrixXd(op.matrix));
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: dense solver failed");
        const int keep = partial ? lowest_k : n;
        out.eigenvalues = solver.eigenvalues().head(keep);
        out.eigenvectors = solver.eigenvectors().leftCols(keep);
        canonicalize_columns(out.eigenvectors);
        out.partial = partial;
        const int probe = std::min(keep, 64);
        for (int i = 0; i < probe; ++i) {
            const int c = i * std::max(1, keep / std::max(1, probe));
            VectorXd r =
                op.apply(VectorXd(out.eigenvectors.col(c))) - out.eigenvalues[c] * out.eigenvectors.col(c);
            out.max_residual = std::max(out.max_residual, r.norm());
        }
    } else {
        lanczos_lowest(op, lowest_k, out.eigenvalues, out.eigenvectors, out.max_residual);
        out.partial = true;
    }
    return out;
}

VectorXd spectrum_of(const ManyBodyOperator& op) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver;
    solver.compute(MatrixXd(op.matrix), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: solver failed");
    return solver.eigenvalues();
}

Wavefunction SpectralDecomposition::eigenstate(int k) const {
    Wavefunction w;
    w.basis = basis;
    w.amplitudes = eigenvectors.col(k).cast<std::complex<double>>();
    return w;
}

// ---- Expectation and product states --------------------------------------

double expectation(const ManyBodyOperator& op, const Wavefunction& psi) {
    if (!op.basis->same_sector(*psi.basis))
        throw std::invalid_argument("expectation: operator and state on different sectors");
    const double n2 = psi.amplitudes.squaredNorm();
    if (n2 < 1e-28) throw std::invalid_argument("expectation: zero-norm state");
    const std::complex<double> v = psi.amplitudes.dot(op.apply(psi.amplitudes));
    return v.real() / n2;
}

double expectation(const ManyBodyOperator& op, const VectorXd& amp) {
    const double n2 = amp.squaredNorm();
    if (n2 < 1e-28) throw std::invalid_argument("expectation: zero-norm state");
    return amp.dot(op.matrix * amp) / n2;
}

Wavefunction product_state(std::shared_ptr<const FockBasis> basis, std::uint64_t config) {
    const int idx = basis->find(config);
    if (idx < 0) throw std::invalid_argument("product_state: configuration not in sector");
    Wavefunction w;
    w.basis = basis;
    w.amplitudes = VectorXcd::Zero(basis->dim());
    w.amplitudes[idx] = 1.0;
    w.product_m = FockBasis::double_occupancy(config, basis->sites());
    return w;
}

Wavefunction product_state(std::shared_ptr<const FockBasis> basis, const std::string& occ) {
    if (static_cast<int>(occ.size()) != basis->sites())
        throw std::invalid_argument("product_state: occupation string length mismatch");
    std::uint64_t config = 0;
    for (int s = 0; s < basis->sites(); ++s) {
        switch (occ[s]) {
            case ' ': case '0': break;
            case 'u': config |= 1ull << (2 * s); break;
            case 'd': config |= 1ull << (2 * s + 1); break;
            case '2': config |= 3ull << (2 * s); break;
            default: throw std::invalid_argument("product_state: bad occupation character");
        }
    }
    return product_state(basis, config);
}

std::uint64_t neel_config(int sites) {
    std::uint64_t c = 0;
    for (int s = 0; s < sites; ++s) c |= 1ull << (2 * s + (s % 2));
    return c;
}

// ---- Multi-sector sweeps --------------------------------------------------

std::vector<SectorStates> diagonalize_sectors(const LatticeSpec& spec, double t, double U,
                                              int lowest_k_per_sector) {
    std::vector<SectorStates> out;
    for (int n_up = 0; n_up <= spec.sites; ++n_up) {
        const int n_down = spec.electrons - n_up;
        if (n_down < 0 || n_down > spec.sites) continue;
        auto H = build_hubbard(spec, t, U, std::make_pair(n_up, n_down));
        SectorStates s;
        s.n_up = n_up;
        s.n_down = n_down;
        const int k = lowest_k_per_sector < 0
                          ? -1
                          : std::min<int>(lowest_k_per_sector, H.dim());
        s.decomposition = diagonalize(H, k);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::pair<int, int>> lowest_states(const std::vector<SectorStates>& sectors,
                                               int count) {
    std::vector<std::pair<double, std::pair<int, int>>> all;
    for (int s = 0; s < static_cast<int>(sectors.size()); ++s)
        for (int k = 0; k < sectors[s].decomposition.count(); ++k)
            all.push_back({sectors[s].decomposition.eigenvalues[k], {s, k}});
    std::sort(all.begin(), all.end());
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < count && i < static_cast<int>(all.size()); ++i)
        out.push_back(all[i].second);
    return out;
}

VectorXd merged_spectrum(const std::vector<SectorStates>& sectors) {
    std::vector<double> all;
    for (const auto& s : sectors)
        for (int k = 0; k < s.decomposition.count(); ++k)
            all.push_back(s.decomposition.eigenvalues[k]);
    std::sort(all.begin(), all.end());
    return Eigen::Map<VectorXd>(all.data(), all.size());
}

}  // namespace qdmd
