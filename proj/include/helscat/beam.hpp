#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "helscat/mie.hpp"

namespace helscat {

// Laguerre-Gauss input mode. The pipeline is restricted to total angular
// momentum m = l + s = 0, so the orbital index is always l = -s.
struct BeamConfig {
    double waist_mm = 0.5;
    int q = 0;  // radial index
    int s = -1; // spin, +1 or -1

    int l() const { return -s; }
};

struct LensConfig {
    double na = 0.9;
    double focal_mm = 1.0;

    double theta_max() const;              // arcsin(NA), collection half-angle
    double aperture_radius_mm() const;     // f*NA, radial extent of the sine-condition map
};

// Focused-beam expansion over regular helicity multipoles: coefficient c[i]
// belongs to multipole order n = i+1. The spin of the beam it was built for
// is carried along because the scattered field needs it.
struct FocusExpansion {
    double omega = 0.0; // rad/s
    int s = -1;
    std::vector<cplx> c;

    int nmax() const { return static_cast<int>(c.size()); }
};

// Field samples carry the evaluation point and Cartesian E components.
struct ApertureField {
    double rho_mm = 0.0;
    double phi = 0.0;
    std::array<cplx, 3> E{};
};

struct SphereField {
    double r_mm = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    std::array<cplx, 3> E{};
};

struct ProjectionNumerics {
    int quad_theta = 128;     // Gauss-Legendre order for the focusing integral
    int quad_radial = 96;     // Gauss-Legendre order for the aperture projection
    int quad_azimuthal = 64;  // uniform azimuthal samples for the projection
    double azimuth_offset = 0.0;
};

struct HelicitySpectrum {
    std::vector<double> omega;     // rad/s, strictly ascending
    std::vector<double> lambda_nm; // the wavelengths the sweep was requested at
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    std::string fingerprint;       // classical-configuration hash, echoed in outputs

    std::size_t size() const { return omega.size(); }
};

// Vector LG mode at an aperture point, unit L2 norm under the rho drho dphi
// area element. Circular basis convention: u_{+1} = (x+iy)/sqrt2 and
// u_{-1} = (-x+iy)/sqrt2; the sign on u_{-1} is what makes a purely electric
// scatterer produce identical amplitudes in both output helicity channels.
ApertureField lg_mode(const BeamConfig& beam, double rho_mm, double phi);

// Radial profile alone (the phi- and polarization-free factor of lg_mode).
double lg_radial_profile(const BeamConfig& beam, double rho_mm);

// Aplanatic-lens focusing coefficients C_n, n = 1..nmax, by Gauss-Legendre
// quadrature of order quad_theta over the lens cap. strip_focus_phase drops
// the e^{-ikf} propagation phase (used to demonstrate that this common phase
// cancels in all channel-difference observables).
FocusExpansion focus_coefficients(const BeamConfig& beam, const LensConfig& lens,
                                  double omega, int nmax, int quad_theta = 128,
                                  bool strip_focus_phase = false);

// Scattered field at a point on the reference sphere (r of order f).
SphereField scattered_field(const MieSet& mie, const FocusExpansion& focus,
                            double r_mm, double phi, double theta);

// Meridional rotation taking the backward-cap ray at (phi, theta' from the
// backward axis) onto the aperture normal: k -> -z, e_theta -> -rho_hat(phi),
// e_phi -> +phi_hat(phi).
std::array<std::array<double, 3>, 3> collimation_rotation(double phi, double theta_prime);

// Aplanatic collimation of a backward-cap sample: rotate with
// collimation_rotation and divide by cos(theta') (area-element ratio between
// the reference sphere and the flat aperture), mapping to rho = f sin(theta').
ApertureField collimate(const LensConfig& lens, const SphereField& sample);

// Helicity-splitting amplitudes: project the collimated backscattered field
// onto the two backward LG modes (preserved helicity carries l = -l_in with
// flipped spin; flipped helicity carries l = l_in with the input spin).
std::pair<cplx, cplx> project_alpha_beta(const BeamConfig& beam, const LensConfig& lens,
                                         const MieSet& mie, const FocusExpansion& focus,
                                         const ProjectionNumerics& num = {});

// Full classical sweep over a wavelength grid (nm, strictly ascending).
// Results are ordered by ascending omega and deterministic for any thread
// count. fingerprint is stored verbatim in the returned spectrum.
HelicitySpectrum sweep(const BeamConfig& beam, const LensConfig& lens,
                       const ParticleConfig& particle, const std::vector<double>& lambda_nm,
                       const ProjectionNumerics& num = {}, int threads = 0,
                       const std::string& fingerprint = "");

// Order-doubling self-check of the classical quadratures at one frequency
// (theta order for C_n; radial x azimuthal for the projection). Throws
// numerical_error if any doubled result moves by more than 1e-8 relative.
void check_quadrature_convergence(const BeamConfig& beam, const LensConfig& lens,
                                  const ParticleConfig& particle, double omega,
                                  const ProjectionNumerics& num);

} // namespace helscat
