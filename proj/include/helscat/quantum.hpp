#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "helscat/beam.hpp"

namespace helscat {

// Evaluates the classical splitting amplitudes (alpha, beta) at an angular
// frequency in rad/s. The quantum layer only ever sees the channel through
// this signature, so a cached sweep, a fresh pipeline evaluation and an
// analytic model are interchangeable.
using SpectrumEval = std::function<std::pair<cplx, cplx>(double)>;

// Linear-interpolation adapter over a sweep result. Evaluation outside the
// tabulated frequency range throws config_error.
SpectrumEval interpolate(const HelicitySpectrum& spectrum);

// Two-photon polarization basis, in storage order. psi/chi distinguish
// equal-helicity from opposite-helicity pairs, +/- the exchange sign.
enum class BasisLabel { psi_plus = 0, psi_minus = 1, chi_plus = 2, chi_minus = 3 };

inline constexpr std::array<const char*, 4> basis_label_names = {
    "psi_plus", "psi_minus", "chi_plus", "chi_minus"};

// Joint spectral amplitude of the photon pair: the symmetric product of two
// identical Gaussians centred on omega_in with width sigma, unit L2 norm.
struct SpectralAmplitude {
    double omega_in = 0.0; // rad/s
    double sigma = 0.0;    // rad/s

    cplx amplitude(double w1, double w2) const;
};

// Gauss-Legendre rule on [omega_in - w*sigma, omega_in + w*sigma]; the joint
// amplitude carries Gaussian tails below 1e-15 outside +-6 sigma, so the
// default window of 6 makes the truncated integrals quadrature-exact.
struct FreqGrid {
    SpectralAmplitude sa;
    std::vector<double> omega;
    std::vector<double> weight;

    int size() const { return static_cast<int>(omega.size()); }
};

FreqGrid frequency_grid(const SpectralAmplitude& sa, int points, double window_sigmas = 6.0);

// Output-state weight functions G_xi(w1, w2) = phi(w1, w2) C_xi(w1, w2),
// sampled on the tensor square of the frequency grid (row-major, so entry
// [i*n + j] belongs to (omega_i, omega_j)). Channels the input state cannot
// reach stay unpopulated.
struct ModeWeights {
    FreqGrid grid;
    std::array<std::vector<cplx>, 4> g;
    std::array<bool, 4> populated{};
};

// Scattering channel map for each input basis state. An equal-helicity "+"
// pair splits over the two symmetric outputs with pair amplitudes
//   C_psi = a(w1) a(w2) + b(w1) b(w2),   C_chi = a(w1) b(w2) + b(w1) a(w2);
// the "-" equal-helicity pair stays in its own (pure) channel with
// a(w1) a(w2) - b(w1) b(w2); the antisymmetric opposite-helicity pair has no
// outgoing channel at all.
ModeWeights channel_weights(BasisLabel input, const SpectrumEval& eval, const FreqGrid& grid);

// Post-selected two-photon density matrix in the basis_label_names order,
// frequency degrees of freedom traced out, trace normalized to 1.
struct DensityMatrix4 {
    std::array<std::array<cplx, 4>, 4> rho{};
};

// entry(xi, xi') = K * integral of G_xi G_xi'^* over (w1, w2) by the tensor
// quadrature of the weights' grid. Throws numerical_error("null state ...")
// when every channel weight vanishes (the antisymmetric input).
DensityMatrix4 density_matrix(const ModeWeights& weights);

// Purity deficit 1 - Tr(rho^2) = 1 - sum |rho_ij|^2: zero for a pure state,
// 1 - 1/4 for the maximally mixed four-level state.
double purity_loss(const DensityMatrix4& dm);

// First-order (quasi-monochromatic) expansion of the channel around the
// pulse centre: alpha(w) ~ A exp[(F_a + i tau_a)(w - omega_in)] and likewise
// for beta, combined into the pair-amplitude log-derivatives of the two
// populated channels. F's and tau's are in seconds; Omega = sigma^2 F is the
// resulting spectral centroid shift in rad/s.
struct QuasiMonoParams {
    double omega_in = 0.0;
    double sigma = 0.0;
    cplx A, B;   // alpha, beta at the pulse centre
    cplx dA, dB; // d alpha / d omega, d beta / d omega (seconds)
    double delta = 0.0; // arg B - arg A
    double F_psi = 0.0, tau_psi = 0.0;
    double F_chi = 0.0, tau_chi = 0.0;
    double Omega_psi = 0.0, Omega_chi = 0.0;
    cplx A_psi, A_chi; // channel amplitudes at the pulse centre
};

// Build the expansion from point samples (A, B) and derivatives (dA, dB).
// Throws degenerate_expansion_error when |A|, |B| or |A^2 + B^2| is too
// small for the log-derivatives to mean anything, and config_error when
// sigma/omega_in >= 1e-2 (the expansion assumes a quasi-monochromatic pump).
QuasiMonoParams quasi_mono_from_samples(const SpectralAmplitude& sa, cplx A, cplx B,
                                        cplx dA, cplx dB);

// Same, with A, B linearly interpolated from a sweep and dA, dB from
// per-node finite differences of the tabulated spectrum (five-point on
// locally uniform frequency grids, three-point otherwise), interpolated to
// the pulse centre. omega_in must be interior enough that both bracketing
// nodes have two-sided neighbours.
QuasiMonoParams quasi_mono_params(const HelicitySpectrum& spectrum, const SpectralAmplitude& sa);

// Closed-form purity deficit of the first-order expansion.
double purity_approx(const QuasiMonoParams& p);

struct PurityRow {
    double lambda_in_nm = 0.0;
    double exact = 0.0;      // purity loss by density-matrix quadrature
    double approx = 0.0;     // closed-form purity loss (== exact when !approx_valid)
    double tau_psi = 0.0, tau_chi = 0.0;     // seconds
    double shift_psi = 0.0, shift_chi = 0.0; // sigma^2 F, rad/s
    bool approx_valid = true;
};

struct QuantumNumerics {
    int freq_grid_points = 64;
    double freq_window_sigmas = 6.0;
};

// Purity-loss spectrum over a grid of pulse-centre wavelengths (nm). Rows
// where the first-order expansion is degenerate fall back to approx = exact
// with approx_valid = false and zeroed diagnostics. Deterministic for any
// thread count.
std::vector<PurityRow> purity_spectrum(BasisLabel input, const HelicitySpectrum& spectrum,
                                       double sigma, const std::vector<double>& lambda_in_nm,
                                       const QuantumNumerics& num = {}, int threads = 0);

} // namespace helscat
