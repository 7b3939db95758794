#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "helscat/materials.hpp"

namespace helscat {

using cplx = std::complex<double>;

struct ParticleConfig {
    double radius_nm = 250.0;
    const Material* material = nullptr;
};

// Per-order Mie scattering coefficients together with their helicity-basis
// combinations V = -(a+b)/sqrt2, W = (a-b)/sqrt2. In this basis V multiplies
// the helicity-preserving multipole and W the helicity-flipping one.
struct MieOrder {
    cplx a, b;
    cplx V, W;
};

struct MieSet {
    double omega = 0.0; // rad/s
    double x = 0.0;     // size parameter k*r
    cplx m_rel;         // sphere index relative to the vacuum host
    std::vector<MieOrder> orders; // orders[i] holds multipole n = i+1

    int nmax() const { return static_cast<int>(orders.size()); }
    const MieOrder& order(int n) const { return orders[n - 1]; }
};

// Multipole cutoff N = ceil(x + 4 x^{1/3} + 2), floored at 3 (Wiscombe-style).
int truncation_order(double x);

// Scattering coefficients (a_n, b_n) of Bohren & Huffman Eq. 4.53, with the
// e^{-i omega t} convention and outgoing h_n^(1).
std::pair<cplx, cplx> mie_ab(int n, double x, cplx m_rel);

// Full coefficient set at one frequency. nmax_override <= 0 picks
// truncation_order(x); larger values are honored for tail studies.
MieSet mie_set(double omega, const ParticleConfig& particle, int nmax_override = 0);

struct CrossSectionDecomposition {
    struct Term {
        int n;
        double electric; // (2pi/k^2) |C_n|^2 |a_n|^2
        double magnetic; // (2pi/k^2) |C_n|^2 |b_n|^2
    };
    double omega = 0.0;
    double total = 0.0;
    std::vector<Term> per_order;
};

struct FocusExpansion; // beam.hpp

// Scattered-power decomposition of the focused beam by multipole order. With
// the unit-power beam normalization used here the terms are dimensionless
// power fractions of the incident beam.
CrossSectionDecomposition cross_section(const MieSet& mie, const FocusExpansion& focus);

} // namespace helscat
