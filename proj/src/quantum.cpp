#include "helscat/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "helscat/constants.hpp"
#include "helscat/errors.hpp"
#include "helscat/parallel.hpp"
#include "helscat/quadrature.hpp"

namespace helscat {

namespace {

constexpr double sqrt_pi = 1.7724538509055160273;

void validate_sa(const SpectralAmplitude& sa) {
    if (!(sa.omega_in > 0.0))
        throw config_error("spectral amplitude: pulse centre frequency must be positive");
    if (!(sa.sigma > 0.0))
        throw config_error("spectral amplitude: width must be positive");
}

// 1D factor of the joint amplitude: phi(w1, w2) = f(w1) f(w2) with unit
// integral of f^2.
double gauss_factor(const SpectralAmplitude& sa, double w) {
    const double t = (w - sa.omega_in) / sa.sigma;
    return std::exp(-0.5 * t * t) / std::sqrt(sa.sigma * sqrt_pi);
}

// Finite-difference derivative of tabulated values at node k: five-point on
// a locally uniform grid, otherwise the three-point formula for unequal
// spacings. Requires both neighbours.
cplx node_derivative(const std::vector<double>& x, const std::vector<cplx>& f, std::size_t k) {
    const std::size_t n = x.size();
    if (k >= 2 && k + 2 < n) {
        const double h = x[k + 1] - x[k];
        const bool uniform = std::abs(x[k] - x[k - 1] - h) <= 1e-9 * h &&
                             std::abs(x[k - 1] - x[k - 2] - h) <= 1e-9 * h &&
                             std::abs(x[k + 2] - x[k + 1] - h) <= 1e-9 * h;
        if (uniform)
            return (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * h);
    }
    const double hm = x[k] - x[k - 1];
    const double hp = x[k + 1] - x[k];
    return (f[k + 1] * (hm * hm) - f[k - 1] * (hp * hp) + f[k] * (hp * hp - hm * hm)) /
           (hm * hp * (hm + hp));
}

} // namespace

cplx SpectralAmplitude::amplitude(double w1, double w2) const {
    validate_sa(*this);
    const double t1 = (w1 - omega_in) / sigma;
    const double t2 = (w2 - omega_in) / sigma;
    return cplx(std::exp(-0.5 * (t1 * t1 + t2 * t2)) / (sigma * sqrt_pi), 0.0);
}

SpectrumEval interpolate(const HelicitySpectrum& spectrum) {
    if (spectrum.size() < 2)
        throw config_error("interpolate: spectrum needs at least two points");
    for (std::size_t i = 1; i < spectrum.size(); ++i)
        if (!(spectrum.omega[i] > spectrum.omega[i - 1]))
            throw config_error("interpolate: spectrum frequencies must be strictly ascending");

    auto data = std::make_shared<const HelicitySpectrum>(spectrum);
    return [data](double w) -> std::pair<cplx, cplx> {
        const auto& om = data->omega;
        if (w < om.front() || w > om.back())
            throw config_error(
                "spectrum evaluation at " + std::to_string(w) + " rad/s is outside the "
                "tabulated range [" + std::to_string(om.front()) + ", " +
                std::to_string(om.back()) + "]; extend the classical sweep");
        const auto it = std::upper_bound(om.begin(), om.end(), w);
        const std::size_t hi = std::min<std::size_t>(
            std::max<std::size_t>(static_cast<std::size_t>(it - om.begin()), 1), om.size() - 1);
        const std::size_t lo = hi - 1;
        const double t = (w - om[lo]) / (om[hi] - om[lo]);
        return {data->alpha[lo] + t * (data->alpha[hi] - data->alpha[lo]),
                data->beta[lo] + t * (data->beta[hi] - data->beta[lo])};
    };
}

FreqGrid frequency_grid(const SpectralAmplitude& sa, int points, double window_sigmas) {
    validate_sa(sa);
    if (points < 1)
        throw config_error("frequency grid: need at least one point");
    if (!(window_sigmas > 0.0))
        throw config_error("frequency grid: window must be positive");
    const double lo = sa.omega_in - window_sigmas * sa.sigma;
    const double hi = sa.omega_in + window_sigmas * sa.sigma;
    if (!(lo > 0.0))
        throw config_error("frequency grid: window extends to non-positive frequencies; "
                           "reduce sigma or the window width");
    Quadrature q = gauss_legendre(points, lo, hi);
    FreqGrid grid;
    grid.sa = sa;
    grid.omega = std::move(q.nodes);
    grid.weight = std::move(q.weights);
    return grid;
}

ModeWeights channel_weights(BasisLabel input, const SpectrumEval& eval, const FreqGrid& grid) {
    validate_sa(grid.sa);
    const std::size_t n = grid.omega.size();
    if (n == 0)
        throw config_error("channel weights: empty frequency grid");

    std::vector<cplx> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ab = eval(grid.omega[i]);
        a[i] = ab.first;
        b[i] = ab.second;
    }
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = gauss_factor(grid.sa, grid.omega[i]);

    ModeWeights out;
    out.grid = grid;

    const auto fill = [&](BasisLabel label, bool cross) {
        // cross = false: pair amplitude a1 a2 + b1 b2 (or the "-" variant)
        // cross = true:  pair amplitude a1 b2 + b1 a2
        auto& g = out.g[static_cast<std::size_t>(label)];
        g.resize(n * n);
        const double sign = (label == BasisLabel::psi_minus) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cplx pair = cross ? a[i] * b[j] + b[i] * a[j]
                                        : a[i] * a[j] + sign * b[i] * b[j];
                g[i * n + j] = f[i] * f[j] * pair;
            }
        out.populated[static_cast<std::size_t>(label)] = true;
    };

    switch (input) {
        case BasisLabel::psi_plus:
            fill(BasisLabel::psi_plus, false);
            fill(BasisLabel::chi_plus, true);
            break;
        case BasisLabel::psi_minus:
            fill(BasisLabel::psi_minus, false);
            break;
        case BasisLabel::chi_plus:
            // same two output channels as psi_plus with the weights swapped
            fill(BasisLabel::psi_plus, true);
            fill(BasisLabel::chi_plus, false);
            break;
        case BasisLabel::chi_minus:
            // the antisymmetric opposite-helicity pair has no outgoing
            // channel: leave every weight unpopulated
            break;
    }
    return out;
}

DensityMatrix4 density_matrix(const ModeWeights& weights) {
    const std::size_t n = weights.grid.omega.size();
    const auto& w = weights.grid.weight;

    const auto overlap = [&](std::size_t xi, std::size_t xj) -> cplx {
        const auto& gi = weights.g[xi];
        const auto& gj = weights.g[xj];
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            cplx row(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                row += w[j] * gi[i * n + j] * std::conj(gj[i * n + j]);
            acc += w[i] * row;
        }
        return acc;
    };

    DensityMatrix4 dm;
    double trace = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!weights.populated[i]) continue;
        for (std::size_t j = i; j < 4; ++j) {
            if (!weights.populated[j]) continue;
            const cplx o = overlap(i, j);
            dm.rho[i][j] = o;
            dm.rho[j][i] = std::conj(o);
        }
        trace += dm.rho[i][i].real();
    }

    if (!(trace > 0.0) || !std::isfinite(trace))
        throw numerical_error(
            "null state: no output channel carries weight for this input state "
            "(the antisymmetric opposite-helicity pair cannot scatter into the "
            "post-selected modes)");

    for (auto& row : dm.rho)
        for (auto& e : row) e /= trace;
    return dm;
}

double purity_loss(const DensityMatrix4& dm) {
    double sum = 0.0;
    for (const auto& row : dm.rho)
        for (const auto& e : row) sum += std::norm(e);
    return 1.0 - sum;
}

QuasiMonoParams quasi_mono_from_samples(const SpectralAmplitude& sa, cplx A, cplx B,
                                        cplx dA, cplx dB) {
    validate_sa(sa);
    if (!(sa.sigma / sa.omega_in < 1e-2))
        throw config_error("first-order expansion: pulse is not quasi-monochromatic "
                           "(sigma/omega_in >= 1e-2)");
    if (std::abs(A) < 1e-12 || std::abs(B) < 1e-12)
        throw degenerate_expansion_error(
            "first-order expansion is singular: a splitting amplitude vanishes at "
            "the pulse centre");
    const cplx pair_psi = A * A + B * B;
    if (std::abs(pair_psi) < 1e-24)
        throw degenerate_expansion_error(
            "first-order expansion is singular: the equal-channel pair amplitude "
            "A^2 + B^2 vanishes at the pulse centre");

    QuasiMonoParams p;
    p.omega_in = sa.omega_in;
    p.sigma = sa.sigma;
    p.A = A;
    p.B = B;
    p.dA = dA;
    p.dB = dB;
    p.delta = std::arg(B) - std::arg(A);

    // Log-derivatives of the two pair amplitudes along the diagonal
    // w1 = w2 = w: real part F (spectral slope), imaginary part tau (group
    // delay), both in seconds.
    const cplx Lpsi = (A * dA + B * dB) / pair_psi;
    const cplx Lchi = 0.5 * (dA / A + dB / B);
    p.F_psi = Lpsi.real();
    p.tau_psi = Lpsi.imag();
    p.F_chi = Lchi.real();
    p.tau_chi = Lchi.imag();
    p.Omega_psi = sa.sigma * sa.sigma * p.F_psi;
    p.Omega_chi = sa.sigma * sa.sigma * p.F_chi;

    const double norm = sa.sigma * sqrt_pi;
    p.A_psi = pair_psi / norm;
    p.A_chi = 2.0 * A * B / norm;
    return p;
}

QuasiMonoParams quasi_mono_params(const HelicitySpectrum& spectrum, const SpectralAmplitude& sa) {
    validate_sa(sa);
    const auto& om = spectrum.omega;
    const std::size_t n = om.size();
    if (n < 3)
        throw config_error("first-order expansion: spectrum needs at least three points");
    const double w0 = sa.omega_in;
    if (w0 < om.front() || w0 > om.back())
        throw config_error("first-order expansion: pulse centre lies outside the spectrum");

    // Nearest node, for the node-coincidence fast path.
    const auto it = std::lower_bound(om.begin(), om.end(), w0);
    std::size_t k = static_cast<std::size_t>(it - om.begin());
    if (k == n || (k > 0 && w0 - om[k - 1] < om[k] - w0)) --k;

    cplx A, B, dA, dB;
    if (std::abs(om[k] - w0) <= 1e-9 * w0) {
        if (k == 0 || k + 1 >= n)
            throw config_error("first-order expansion: pulse centre sits on the edge of "
                               "the spectrum; extend the classical sweep");
        A = spectrum.alpha[k];
        B = spectrum.beta[k];
        dA = node_derivative(om, spectrum.alpha, k);
        dB = node_derivative(om, spectrum.beta, k);
    } else {
        const auto hi_it = std::upper_bound(om.begin(), om.end(), w0);
        const std::size_t hi = static_cast<std::size_t>(hi_it - om.begin());
        const std::size_t lo = hi - 1;
        if (lo == 0 || hi + 1 >= n)
            throw config_error("first-order expansion: pulse centre is too close to the "
                               "edge of the spectrum for two-sided derivatives; extend "
                               "the classical sweep");
        const double t = (w0 - om[lo]) / (om[hi] - om[lo]);
        A = spectrum.alpha[lo] + t * (spectrum.alpha[hi] - spectrum.alpha[lo]);
        B = spectrum.beta[lo] + t * (spectrum.beta[hi] - spectrum.beta[lo]);
        const cplx dAlo = node_derivative(om, spectrum.alpha, lo);
        const cplx dAhi = node_derivative(om, spectrum.alpha, hi);
        const cplx dBlo = node_derivative(om, spectrum.beta, lo);
        const cplx dBhi = node_derivative(om, spectrum.beta, hi);
        dA = dAlo + t * (dAhi - dAlo);
        dB = dBlo + t * (dBhi - dBlo);
    }
    return quasi_mono_from_samples(sa, A, B, dA, dB);
}

double purity_approx(const QuasiMonoParams& p) {
    const double s2 = p.sigma * p.sigma;
    const double ap2 = std::norm(p.A_psi);
    const double ac2 = std::norm(p.A_chi);
    const double Fp = p.F_psi, Fc = p.F_chi;
    const double dF = Fp - Fc;
    const double dT = p.tau_psi - p.tau_chi;
    const double num = 2.0 * ap2 * ac2 * std::exp(s2 * (Fc * Fc + Fp * Fp));
    const double den = ap2 * std::exp(2.0 * s2 * Fp * Fp) + ac2 * std::exp(2.0 * s2 * Fc * Fc);
    return num / (den * den) * (std::exp(s2 * dF * dF) - std::exp(-s2 * dT * dT));
}

std::vector<PurityRow> purity_spectrum(BasisLabel input, const HelicitySpectrum& spectrum,
                                       double sigma, const std::vector<double>& lambda_in_nm,
                                       const QuantumNumerics& num, int threads) {
    if (!(sigma > 0.0))
        throw config_error("purity spectrum: sigma must be positive");
    if (lambda_in_nm.empty())
        throw config_error("purity spectrum: empty pulse-centre grid");
    for (double lam : lambda_in_nm)
        if (!(lam > 0.0))
            throw config_error("purity spectrum: pulse-centre wavelengths must be positive");

    const SpectrumEval eval = interpolate(spectrum);
    std::vector<PurityRow> rows(lambda_in_nm.size());
    parallel_for_index(rows.size(), threads, [&](std::size_t i) {
        const double lam = lambda_in_nm[i];
        const SpectralAmplitude sa{omega_from_lambda_nm(lam), sigma};
        const FreqGrid grid = frequency_grid(sa, num.freq_grid_points, num.freq_window_sigmas);
        const ModeWeights weights = channel_weights(input, eval, grid);
        const DensityMatrix4 dm = density_matrix(weights);

        PurityRow row;
        row.lambda_in_nm = lam;
        row.exact = purity_loss(dm);
        try {
            const QuasiMonoParams p = quasi_mono_params(spectrum, sa);
            row.tau_psi = p.tau_psi;
            row.tau_chi = p.tau_chi;
            row.shift_psi = p.Omega_psi;
            row.shift_chi = p.Omega_chi;
            // the "-" equal-helicity input stays in a single channel, so its
            // output is pure at every order of the expansion
            row.approx = (input == BasisLabel::psi_minus) ? 0.0 : purity_approx(p);
            row.approx_valid = true;
        } catch (const degenerate_expansion_error&) {
            row.approx = row.exact;
            row.approx_valid = false;
        }
        rows[i] = row;
    });
    return rows;
}

} // namespace helscat
