#pragma once

#include <complex>
#include <vector>

namespace helscat {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Spherical Bessel functions.
//
// kind::first  -> j_n (regular at the origin)
// kind::second -> y_n (singular at the origin)
// kind::third  -> h_n^(1) = j_n + i y_n  (outgoing wave, e^{-iwt} convention)
// ---------------------------------------------------------------------------
enum class BesselKind { first, second, third };

cplx spherical_bessel(BesselKind kind, int n, cplx z);

// ---------------------------------------------------------------------------
// Riccati-Bessel functions psi_n(z) = z j_n(z) and xi_n(z) = z h_n^(1)(z),
// together with their first derivatives.  Both members of the first-kind
// pair are real for real argument; the Wronskian psi xi' - psi' xi = i.
// ---------------------------------------------------------------------------
struct RiccatiPair {
    cplx value;
    cplx derivative;
};

enum class RiccatiKind { psi, xi };

RiccatiPair riccati(RiccatiKind kind, int n, cplx z);

// Generalized Laguerre polynomial L_q^l(x) by the three-term recurrence in q.
double laguerre(int q, int l, double x);

// ---------------------------------------------------------------------------
// Angular functions of the vector multipoles:
//   pi_nm(theta)  = m P_n^m(cos theta) / sin theta
//   tau_nm(theta) = d/dtheta P_n^m(cos theta)
// P_n^m in the positive (no Condon-Shortley) convention.  Poles are handled
// by analytic limits: for m = 0 both vanish, for |m| = 1 both stay finite,
// for |m| >= 2 both vanish at theta = 0, pi.
// ---------------------------------------------------------------------------
struct AngularFunctions {
    int n;
    int m;
    double theta;
    double pi_nm;
    double tau_nm;
};

AngularFunctions angular_functions(int n, int m, double theta);

// Batch helper for the m = 0 sums in the scattering pipeline: fills
// P[k] = P_k(cos theta) and tau[k] = tau_k0(theta) for k = 0..nmax.
// Both arrays must have nmax+1 entries.
void legendre_p_tau(int nmax, double theta, double* P, double* tau);

} // namespace helscat
