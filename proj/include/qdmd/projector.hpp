#pragma once

#include "qdmd/lattice.hpp"

#include <vector>

namespace qdmd {

/// Odd Chebyshev-basis polynomial approximating sign(x) outside |x| < delta:
/// |S(x)| <= 1 on [-1,1] and |S(x) - sign(x)| <= eps on [-1,-delta] u [delta,1],
/// both verified on a dense grid at construction.
struct SignPolynomialSpec {
    double delta = 0.0;
    double eps = 0.0;
    int degree = 0;              // odd
    VectorXd cheb;               // coefficients c_j of T_j, even entries zero
    double sup_norm = 0.0;       // max |S| on the grid
    double sign_error = 0.0;     // max |S - sign| outside the delta band

    double evaluate(double x) const;  // Clenshaw recurrence
};

/// QSP phase count d = ceil((2/5) sqrt((rho^2 + log(1/eps)) log(1/eps))),
/// rho = (1/delta) sqrt(2 log(2/(pi eps^2))); natural logarithms.
int qsp_degree(double delta, double eps);

/// Chebyshev expansion of erf(k x) with k set by (delta, eps), rescaled to
/// unit sup norm, degree escalated until both grid conditions hold. Throws
/// with the achieved error if max_degree is insufficient.
SignPolynomialSpec build_sign_poly(double delta, double eps, int max_degree = 6000);

enum class ProjectorTarget { LowEnergy, Complement };

struct ProjectionOutcome {
    Wavefunction projected;        // subnormalized, flagged
    double shifted_threshold = 0;  // Lambda +- delta (lambda + |Lambda|)
    double residual = 0;           // norm outside the target space
    double retained_norm = 0;      // norm inside the target space
    ProjectorTarget target = ProjectorTarget::LowEnergy;
};

/// Applies 1/2 (I -+ S[(H - Lambda I)/(lambda + |Lambda|)]) in the eigenbasis
/// (the minus branch keeps low energies, matching the reflector convention
/// R = -sign[H - Lambda I]). Reports the Theorem residuals against the
/// shifted thresholds.
ProjectionOutcome apply_half_projector(const SpectralDecomposition& dec, double lambda_cut,
                                       double lambda_norm, const SignPolynomialSpec& poly,
                                       const Wavefunction& psi, ProjectorTarget target);

struct AmplificationPlan {
    double gamma = 0.0;
    double eps = 0.0;
    long repetitions = 0;           // ceil(1 + (pi/(2 asin(gamma(1-eps gamma))) - 1)/2)
    long repetitions_appendix = 0;  // ceil((pi/asin(sqrt(1-I^2)) - 1)/2), I = sqrt(1-gamma^2)
    double predicted_final_fidelity = 0.0;  // sin((2k+1) theta) at k = repetitions
};

AmplificationPlan amplification_iterations(double gamma, double eps);

struct AmplificationTrace {
    struct Row {
        int iteration = 0;
        double good_amplitude = 0.0;  // flagged component inside the target space
        double infidelity = 0.0;      // of the flagged block w.r.t. the target space
        double flagged_norm = 0.0;
    };
    std::vector<Row> rows;
    double theta = 0.0;  // asin of the initial flagged amplitude
};

/// Exact statevector simulation of the Grover iterate Q = -A S0 A^dag S_chi on
/// the (flag, block-encoding ancilla, system) register. A null polynomial uses
/// the exact spectral reflector instead.
AmplificationTrace simulate_amplification(const SpectralDecomposition& dec, double lambda_cut,
                                          double lambda_norm, const SignPolynomialSpec* poly,
                                          const Wavefunction& psi0, int iterations);

/// Exact spectral projector onto eigenstates with E <= threshold, as a dense
/// matrix on the sector (test and oracle use).
MatrixXd exact_projector(const SpectralDecomposition& dec, double threshold);

}  // namespace qdmd
