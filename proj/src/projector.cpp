#include "qdmd/projector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qdmd {

namespace {

constexpr int kGridPoints = 10000;

// Chebyshev coefficients of f on [-1,1] up to `degree`, by the cosine rule.
VectorXd chebyshev_coefficients(const std::function<double(double)>& f, int degree) {
    const int m = std::max(4 * (degree + 1), 512);
    VectorXd c = VectorXd::Zero(degree + 1);
    std::vector<double> fx(m);
    for (int i = 0; i < m; ++i) {
        const double theta = std::numbers::pi * (i + 0.5) / m;
        fx[i] = f(std::cos(theta));
    }
    for (int j = 0; j <= degree; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += fx[i] * std::cos(j * std::numbers::pi * (i + 0.5) / m);
        c[j] = 2.0 * acc / m;
    }
    c[0] *= 0.5;
    return c;
}

struct GridCheck {
    double sup_norm = 0.0;
    double sign_error = 0.0;
};

GridCheck check_on_grid(const SignPolynomialSpec& s) {
    GridCheck g;
    for (int i = 0; i <= kGridPoints; ++i) {
        const double x = -1.0 + 2.0 * i / kGridPoints;
        const double v = s.evaluate(x);
        g.sup_norm = std::max(g.sup_norm, std::abs(v));
        if (std::abs(x) >= s.delta) {
            const double target = x >= 0 ? 1.0 : -1.0;
            g.sign_error = std::max(g.sign_error, std::abs(v - target));
        }
    }
    return g;
}

}  // namespace

double SignPolynomialSpec::evaluate(double x) const {
    // Clenshaw for sum c_j T_j(x).
    double b1 = 0.0, b2 = 0.0;
    for (int j = static_cast<int>(cheb.size()) - 1; j >= 1; --j) {
        const double b0 = 2.0 * x * b1 - b2 + cheb[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + cheb[0];
}

int qsp_degree(double delta, double eps) {
    if (delta <= 0 || delta >= 1 || eps <= 0 || eps >= 1)
        throw std::invalid_argument("qsp_degree: need 0 < delta, eps < 1");
    const double rho = (1.0 / delta) * std::sqrt(2.0 * std::log(2.0 / (std::numbers::pi * eps * eps)));
    const double le = std::log(1.0 / eps);
    return static_cast<int>(std::ceil(0.4 * std::sqrt((rho * rho + le) * le)));
}

SignPolynomialSpec build_sign_poly(double delta, double eps, int max_degree) {
    if (delta <= 0 || delta >= 1 || eps <= 0 || eps >= 1)
        throw std::invalid_argument("sign poly: need 0 < delta, eps < 1");
    // erf(k x) tracks sign(x) to eps/2 outside the band for this k.
    const double k = std::sqrt(std::log(4.0 / eps)) / delta;
    int degree = std::max(qsp_degree(delta, eps) | 1, 3);
    SignPolynomialSpec best;
    while (degree <= max_degree) {
        SignPolynomialSpec s;
        s.delta = delta;
        s.eps = eps;
        s.degree = degree;
        s.cheb = chebyshev_coefficients([k](double x) { return std::erf(k * x); }, degree);
        for (int j = 0; j < s.cheb.size(); j += 2) s.cheb[j] = 0.0;  // enforce odd parity
        GridCheck g = check_on_grid(s);
        if (g.sup_norm > 1.0) {
            s.cheb /= g.sup_norm * (1.0 + 1e-12);
            g = check_on_grid(s);
        }
        s.sup_norm = g.sup_norm;
        s.sign_error = g.sign_error;
        if (g.sup_norm <= 1.0 && g.sign_error <= eps) return s;
        best = s;
        degree = std::max(degree + 2, static_cast<int>(degree * 1.3) | 1);
    }
    throw std::runtime_error("sign poly: conditions unmet at max degree, achieved sup error " +
                             std::to_string(best.sign_error));
}

ProjectionOutcome apply_half_projector(const SpectralDecomposition& dec, double lambda_cut,
                                       double lambda_norm, const SignPolynomialSpec& poly,
                                       const Wavefunction& psi, ProjectorTarget target) {
    if (std::abs(lambda_cut) > lambda_norm)
        throw std::invalid_argument("projector: Lambda outside [-lambda, lambda]");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("projector: input state must be normalized");
    if (dec.partial)
        throw std::invalid_argument("projector: needs a full spectral decomposition");

    const double scale = lambda_norm + std::abs(lambda_cut);
    const int n = dec.count();
    VectorXcd alpha = dec.eigenvectors.transpose() * psi.amplitudes;
    VectorXcd alpha_out(n);
    const double band = poly.delta * scale;
    const double shifted = target == ProjectorTarget::LowEnergy ? lambda_cut + band
                                                                : lambda_cut - band;
    for (int k = 0; k < n; ++k) {
        const double x = (dec.eigenvalues[k] - lambda_cut) / scale;
        const double s = poly.evaluate(x);
        const double mult = target == ProjectorTarget::LowEnergy ? 0.5 * (1.0 - s)
                                                                 : 0.5 * (1.0 + s);
        alpha_out[k] = mult * alpha[k];
    }

    ProjectionOutcome out;
    out.target = target;
    out.shifted_threshold = shifted;
    double inside2 = 0.0, outside2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const bool in_target = target == ProjectorTarget::LowEnergy
                                   ? dec.eigenvalues[k] <= shifted
                                   : dec.eigenvalues[k] >= shifted;
        (in_target ? inside2 : outside2) += std::norm(alpha_out[k]);
    }
    out.retained_norm = std::sqrt(inside2);
    out.residual = std::sqrt(outside2);
    out.projected.basis = dec.basis;
    out.projected.amplitudes = dec.eigenvectors * alpha_out;
    out.projected.subnormalized = true;
    return out;
}

AmplificationPlan amplification_iterations(double gamma, double eps) {
    if (gamma <= 0 || gamma > 1) throw std::invalid_argument("amplification: need 0 < gamma <= 1");
    AmplificationPlan plan;
    plan.gamma = gamma;
    plan.eps = eps;
    const double g = std::min(gamma * (1.0 - eps * gamma), 1.0);
    plan.repetitions = static_cast<long>(
        std::ceil(1.0 + 0.5 * (std::numbers::pi / (2.0 * std::asin(g)) - 1.0)));
    const double infid = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
    plan.repetitions_appendix = static_cast<long>(std::ceil(
        0.5 * (std::numbers::pi / std::asin(std::sqrt(1.0 - infid * infid)) - 1.0)));
    // The bracket counts the initial preparation plus the Grover iterations, so
    // the rotation count driving sin((2k+1)theta) is repetitions - 1.
    const double theta = std::asin(std::min(1.0, gamma));
    plan.predicted_final_fidelity =
        std::abs(std::sin((2.0 * (plan.repetitions - 1) + 1.0) * theta));
    return plan;
}

AmplificationTrace simulate_amplification(const SpectralDecomposition& dec, double lambda_cut,
                                          double lambda_norm, const SignPolynomialSpec* poly,
                                          const Wavefunction& psi0, int iterations) {
    if (dec.partial) throw std::invalid_argument("amplification: needs the full decomposition");
    const int n = dec.count();
    const double scale = lambda_norm + std::abs(lambda_cut);
    const double band = (poly ? poly->delta : 0.0) * scale;
    const double good_threshold = lambda_cut + band;

    // Reduced multipliers: s_k of the block-encoded reflector, low-energy branch.
    VectorXd s(n);
    for (int k = 0; k < n; ++k) {
        const double x = (dec.eigenvalues[k] - lambda_cut) / scale;
        s[k] = poly ? -poly->evaluate(x) : (dec.eigenvalues[k] <= lambda_cut ? 1.0 : -1.0);
        s[k] = std::clamp(s[k], -1.0, 1.0);
    }

    // Joint register (flag f, ancilla a, eigenmode k); index = (f*2 + a)*n + k.
    auto idx = [n](int f, int a, int k) { return (f * 2 + a) * n + k; };
    VectorXcd alpha0 = dec.eigenvectors.transpose() * psi0.amplitudes;

    // U_theta = (H_f x I) cU_S (H_f x I) with the qubitization block
    // u_k = [[s, c], [c, -s]] on the ancilla when the flag is set.
    auto apply_utheta = [&](const VectorXcd& v) {
        VectorXcd w(4 * n);
        const double r = std::numbers::sqrt2;
        for (int k = 0; k < n; ++k) {
            const double ck = std::sqrt(std::max(0.0, 1.0 - s[k] * s[k]));
            // Hadamard on the flag.
            std::complex<double> v00 = (v[idx(0, 0, k)] + v[idx(1, 0, k)]) / r;
            std::complex<double> v01 = (v[idx(0, 1, k)] + v[idx(1, 1, k)]) / r;
            std::complex<double> v10 = (v[idx(0, 0, k)] - v[idx(1, 0, k)]) / r;
            std::complex<double> v11 = (v[idx(0, 1, k)] - v[idx(1, 1, k)]) / r;
            // Controlled block on the ancilla.
            const std::complex<double> u10 = s[k] * v10 + ck * v11;
            const std::complex<double> u11 = ck * v10 - s[k] * v11;
            // Hadamard on the flag again.
            w[idx(0, 0, k)] = (v00 + u10) / r;
            w[idx(0, 1, k)] = (v01 + u11) / r;
            w[idx(1, 0, k)] = (v00 - u10) / r;
            w[idx(1, 1, k)] = (v01 - u11) / r;
        }
        return w;
    };

    VectorXcd start = VectorXcd::Zero(4 * n);
    for (int k = 0; k < n; ++k) start[idx(0, 0, k)] = alpha0[k];
    VectorXcd big_psi = apply_utheta(start);  // |Psi> = A |0>

    auto record = [&](int iteration, const VectorXcd& v, AmplificationTrace& trace) {
        double good2 = 0.0, flag2 = 0.0, bad2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double w2 = std::norm(v[idx(0, 0, k)]);
            flag2 += w2;
            (dec.eigenvalues[k] <= good_threshold ? good2 : bad2) += w2;
        }
        AmplificationTrace::Row row;
        row.iteration = iteration;
        row.good_amplitude = std::sqrt(good2);
        row.flagged_norm = std::sqrt(flag2);
        row.infidelity = flag2 > 0 ? std::sqrt(bad2 / flag2) : 0.0;
        trace.rows.push_back(row);
    };

    AmplificationTrace trace;
    record(0, big_psi, trace);
    trace.theta = std::asin(std::min(1.0, trace.rows[0].flagged_norm));

    VectorXcd state = big_psi;
    for (int it = 1; it <= iterations; ++it) {
        // S_chi: flip everything outside the flagged block.
        VectorXcd v = -state;
        for (int k = 0; k < n; ++k) v[idx(0, 0, k)] = state[idx(0, 0, k)];
        // A S0 A^dag = 2 |Psi><Psi| - I, then the global minus sign.
        const std::complex<double> overlap = big_psi.dot(v);
        v = -(2.0 * overlap * big_psi - v);
        state = v;
        record(it, state, trace);
    }
    return trace;
}

MatrixXd exact_projector(const SpectralDecomposition& dec, double threshold) {
    MatrixXd p = MatrixXd::Zero(dec.eigenvectors.rows(), dec.eigenvectors.rows());
    for (int k = 0; k < dec.count(); ++k)
        if (dec.eigenvalues[k] <= threshold)
            p += dec.eigenvectors.col(k) * dec.eigenvectors.col(k).transpose();
    return p;
}

}  // namespace qdmd
