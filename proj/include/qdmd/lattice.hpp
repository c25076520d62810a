#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdmd {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXcd;
using SparseMat = Eigen::SparseMatrix<double>;

enum class Geometry { Chain, Ladder2xL };
enum class Boundary { Open, Periodic };

/// Small-lattice description. Sites are indexed 0..N-1; for the ladder the
/// index is 2*rung + leg. Electron count defaults to round((1-p)*N).
struct LatticeSpec {
    int sites = 2;
    Geometry geometry = Geometry::Chain;
    Boundary boundary = Boundary::Open;
    int electrons = 2;
    double hole_doping = 0.0;

    static LatticeSpec chain(int n, int electrons, Boundary b = Boundary::Open);
    static LatticeSpec ladder(int n, int electrons, Boundary b = Boundary::Open);
    static LatticeSpec doped(int n, Geometry g, double p, Boundary b = Boundary::Open);

    void validate() const;  // throws std::invalid_argument
    std::vector<std::pair<int, int>> bonds() const;
};

/// Ordered occupation basis of one (particle number, S_z) symmetry sector.
/// A configuration packs one bit per fermionic mode; mode = 2*site + spin
/// with spin 0 = up, 1 = down (site-major Jordan-Wigner order).
class FockBasis {
  public:
    static std::shared_ptr<const FockBasis> fermionic(int sites, int n_up, int n_down);
    /// Single-occupancy (spin-1/2) sector: every site holds exactly one electron.
    static std::shared_ptr<const FockBasis> spin_half(int sites, int n_up);

    int sites() const { return sites_; }
    int n_up() const { return n_up_; }
    int n_down() const { return n_down_; }
    int particles() const { return n_up_ + n_down_; }
    int twice_sz() const { return n_up_ - n_down_; }
    bool spin_only() const { return spin_only_; }
    int dim() const { return static_cast<int>(states_.size()); }

    std::uint64_t state(int i) const { return states_[i]; }
    /// Ordinal of a configuration, or -1 if outside the sector.
    int find(std::uint64_t config) const;

    bool same_sector(const FockBasis& other) const;

    static bool up_occupied(std::uint64_t config, int site) { return (config >> (2 * site)) & 1u; }
    static bool down_occupied(std::uint64_t config, int site) { return (config >> (2 * site + 1)) & 1u; }
    static int double_occupancy(std::uint64_t config, int sites);

  private:
    FockBasis() = default;
    int sites_ = 0, n_up_ = 0, n_down_ = 0;
    bool spin_only_ = false;
    std::vector<std::uint64_t> states_;  // sorted ascending
};

/// Normalized state on one sector. `product_m` carries the double-occupancy
/// label for product states, -1 otherwise. Subnormalized vectors are only
/// produced by the projector simulator and are flagged explicitly.
struct Wavefunction {
    std::shared_ptr<const FockBasis> basis;
    VectorXcd amplitudes;
    int product_m = -1;
    bool subnormalized = false;

    double norm() const { return amplitudes.norm(); }
};

/// Sparse Hermitian operator on a sector, with a norm bound lambda >= ||A||.
struct ManyBodyOperator {
    std::shared_ptr<const FockBasis> basis;
    SparseMat matrix;
    double lambda = 0.0;
    std::string units;  // "t", "J" or "dimensionless"
    std::string label;

    int dim() const { return static_cast<int>(matrix.rows()); }
    VectorXd apply(const VectorXd& v) const { return matrix * v; }
    VectorXcd apply(const VectorXcd& v) const;
    /// max_ij |A_ij - conj(A_ji)| over stored entries.
    double hermiticity_violation() const;
};

struct SpectralDecomposition {
    std::shared_ptr<const FockBasis> basis;
    VectorXd eigenvalues;   // ascending
    MatrixXd eigenvectors;  // columns, orthonormal, sign-canonicalized
    double lambda = 0.0;    // norm bound of the diagonalized operator
    bool partial = false;   // true when only the lowest k pairs were computed
    double max_residual = 0.0;

    int count() const { return static_cast<int>(eigenvalues.size()); }
    Wavefunction eigenstate(int k) const;
};

inline constexpr int kDenseSolverCap = 4096;
inline constexpr std::int64_t kDimensionCap = 1 << 20;

// ---- Hamiltonians and descriptors -------------------------------------

/// Fermi-Hubbard Hamiltonian -t sum_<ij>s (c+_is c_js + h.c.) + U sum_i n_iu n_id
/// on the sector picked by `sector` (defaults to S_z = 0 or +1/2).
ManyBodyOperator build_hubbard(const LatticeSpec& spec, double t, double U,
                               std::optional<std::pair<int, int>> sector = std::nullopt);

/// Heisenberg J sum_<ij> S_i.S_j + c on the single-occupancy sector.
ManyBodyOperator build_heisenberg(const LatticeSpec& spec, double J, double c,
                                  std::optional<int> n_up = std::nullopt);

enum class DescriptorKind { TotalHopping, TotalDoubleOccupancy, SpinSpin, RdmElement };

struct DescriptorSpec {
    DescriptorKind kind;
    int i = -1, j = -1;  // SpinSpin: site pair; RdmElement: spin-orbital pair
};

ManyBodyOperator build_descriptor(std::shared_ptr<const FockBasis> basis, const LatticeSpec& spec,
                                  const DescriptorSpec& d);
ManyBodyOperator total_spin_spin(std::shared_ptr<const FockBasis> basis, const LatticeSpec& spec);

/// Real-symmetric 1-RDM elements over 2N spin-orbitals: number operators n_p
/// and symmetrized pairs c+_p c_q + c+_q c_p. The antisymmetric combinations
/// have vanishing expectation on real eigenstates and are left out of the pool;
/// cost models count the full (2N)^2 set separately.
std::vector<DescriptorSpec> enumerate_rdm1(int sites);

// ---- Core operations ---------------------------------------------------

/// Full decomposition (lowest_k < 0) or lowest-k pairs. Dense solve for
/// dim <= kDenseSolverCap, Lanczos with full reorthogonalization above.
SpectralDecomposition diagonalize(const ManyBodyOperator& op, int lowest_k = -1);

/// Eigenvalues only (no vectors); always dense, any dimension under the cap.
VectorXd spectrum_of(const ManyBodyOperator& op);

/// Rayleigh quotient <psi|A|psi>/<psi|psi>. Throws on zero norm.
double expectation(const ManyBodyOperator& op, const Wavefunction& psi);
double expectation(const ManyBodyOperator& op, const VectorXd& real_amplitudes);

Wavefunction product_state(std::shared_ptr<const FockBasis> basis, std::uint64_t config);
/// Occupations given per site as one of ' ', 'u', 'd', '2' (empty, up, down, double).
Wavefunction product_state(std::shared_ptr<const FockBasis> basis, const std::string& occupations);

/// Neel configuration: alternating up/down along the site index.
std::uint64_t neel_config(int sites);

// ---- Multi-sector sweeps ----------------------------------------------

struct SectorStates {
    int n_up = 0, n_down = 0;
    SpectralDecomposition decomposition;
};

/// Diagonalize every (n_up, n_down) sector with n_up + n_down = electrons.
/// lowest_k_per_sector < 0 computes full sectors.
std::vector<SectorStates> diagonalize_sectors(const LatticeSpec& spec, double t, double U,
                                              int lowest_k_per_sector = -1);

/// Indices (sector, level) of the `count` lowest states across sectors.
std::vector<std::pair<int, int>> lowest_states(const std::vector<SectorStates>& sectors, int count);

/// All eigenvalues across sectors, ascending.
VectorXd merged_spectrum(const std::vector<SectorStates>& sectors);

}  // namespace qdmd
