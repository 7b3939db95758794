#include "helscat/specfun.hpp"

#include <cmath>
#include <vector>

#include "helscat/errors.hpp"

namespace helscat {

namespace {

// j_0 and j_1 have removable singularities at z = 0; use the series there so
// small-|z| calls stay fully accurate.
cplx j0_of(cplx z) {
    if (std::abs(z) < 1e-4) {
        cplx z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    }
    return std::sin(z) / z;
}

cplx j1_of(cplx z) {
    if (std::abs(z) < 1e-4) {
        cplx z2 = z * z;
        return z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0));
    }
    return std::sin(z) / (z * z) - std::cos(z) / z;
}

// Regular solution by upward recurrence; stable only while n <= |z|.
cplx bessel_j_upward(int n, cplx z) {
    cplx jm = j0_of(z);
    if (n == 0)
        return jm;
    cplx j = j1_of(z);
    for (int k = 1; k < n; ++k) {
        cplx jp = (2.0 * k + 1.0) / z * j - jm;
        jm = j;
        j = jp;
    }
    return j;
}

// Miller's downward recurrence for j_n when n exceeds |z|: seed an arbitrary
// tail far above n, recur down (the regular solution is the decaying one in
// that direction), then normalize against the closed-form j_0.
cplx bessel_j_downward(int n, cplx z) {
    const double az = std::abs(z);
    const int start = n + 16 + static_cast<int>(std::sqrt(40.0 * n) + az);

    cplx jp = 0.0;       // j_{k+1}
    cplx j = 1e-30;      // j_k  (arbitrary scale)
    cplx target = 0.0;   // accumulates j_n at the arbitrary scale
    cplx ref0 = 0.0, ref1 = 0.0;
    for (int k = start; k >= 0; --k) {
        cplx jm = (2.0 * k + 3.0) / z * j - jp;
        jp = j;
        j = jm;
        if (k == n)
            target = j;
        if (k == 1)
            ref1 = j;
        if (k == 0)
            ref0 = j;
        // Rescale before overflow; the final normalization removes the scale.
        if (std::abs(j.real()) > 1e250 || std::abs(j.imag()) > 1e250) {
            const cplx s = 1e-250;
            j *= s;
            jp *= s;
            target *= s;
            ref0 *= s;
            ref1 *= s;
        }
    }
    // Normalize with whichever reference is farther from a zero of j.
    cplx t0 = j0_of(z), t1 = j1_of(z);
    if (std::abs(t0) >= std::abs(t1))
        return target * (t0 / ref0);
    return target * (t1 / ref1);
}

cplx bessel_j(int n, cplx z) {
    if (n == 0)
        return j0_of(z);
    if (n == 1)
        return j1_of(z);
    if (static_cast<double>(n) <= std::abs(z))
        return bessel_j_upward(n, z);
    return bessel_j_downward(n, z);
}

// y_n is the dominant solution upward, so plain forward recurrence is stable
// for every argument.
cplx bessel_y(int n, cplx z) {
    cplx ym = -std::cos(z) / z;
    if (n == 0)
        return ym;
    cplx y = -std::cos(z) / (z * z) - std::sin(z) / z;
    for (int k = 1; k < n; ++k) {
        cplx yp = (2.0 * k + 1.0) / z * y - ym;
        ym = y;
        y = yp;
    }
    return y;
}

bool finite(cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Double factorial (2m-1)!! for the P_m^m seed.
double odd_double_factorial(int m) {
    double r = 1.0;
    for (int k = 3; k <= 2 * m - 1; k += 2)
        r *= k;
    return r;
}

} // namespace

cplx spherical_bessel(BesselKind kind, int n, cplx z) {
    if (n < 0)
        throw numerical_error("spherical_bessel: order must be >= 0");
    if (kind != BesselKind::first && std::abs(z) == 0.0)
        throw numerical_error("spherical_bessel: y_n/h_n undefined at z = 0");

    cplx v;
    switch (kind) {
    case BesselKind::first:
        v = (std::abs(z) == 0.0) ? cplx(n == 0 ? 1.0 : 0.0) : bessel_j(n, z);
        break;
    case BesselKind::second:
        v = bessel_y(n, z);
        break;
    case BesselKind::third:
        v = bessel_j(n, z) + cplx(0.0, 1.0) * bessel_y(n, z);
        break;
    }
    if (!finite(v))
        throw numerical_error("spherical_bessel: non-finite result");
    return v;
}

RiccatiPair riccati(RiccatiKind kind, int n, cplx z) {
    if (n < 1)
        throw numerical_error("riccati: order must be >= 1");
    if (std::abs(z) == 0.0)
        throw numerical_error("riccati: argument must be nonzero");

    const BesselKind bk = (kind == RiccatiKind::psi) ? BesselKind::first : BesselKind::third;
    const cplx fn = spherical_bessel(bk, n, z);
    const cplx fnm1 = spherical_bessel(bk, n - 1, z);

    RiccatiPair p;
    p.value = z * fn;
    // d/dz [z f_n] = z f_{n-1} - n f_n, from f_n' = f_{n-1} - (n+1) f_n / z.
    p.derivative = z * fnm1 - static_cast<double>(n) * fn;
    if (!finite(p.value) || !finite(p.derivative))
        throw numerical_error("riccati: non-finite result");
    return p;
}

double laguerre(int q, int l, double x) {
    if (q < 0)
        throw numerical_error("laguerre: radial index must be >= 0");
    double lm = 1.0; // L_0^l
    if (q == 0)
        return lm;
    double lc = 1.0 + l - x; // L_1^l
    for (int k = 1; k < q; ++k) {
        double ln = ((2.0 * k + l + 1.0 - x) * lc - (k + l) * lm) / (k + 1.0);
        lm = lc;
        lc = ln;
    }
    return lc;
}

AngularFunctions angular_functions(int n, int m, double theta) {
    if (n < 1 || std::abs(m) > n)
        throw numerical_error("angular_functions: need n >= 1 and |m| <= n");

    AngularFunctions out{n, m, theta, 0.0, 0.0};
    const int ma = std::abs(m);
    const double x = std::cos(theta);
    const double s = std::sin(theta);

    // Negative m rescales P_n^m by (n-|m|)!/(n+|m|)! in this convention.
    double neg_scale = 1.0;
    if (m < 0) {
        for (int k = n - ma + 1; k <= n + ma; ++k)
            neg_scale /= k;
    }

    if (std::abs(s) < 1e-9) {
        // Analytic pole limits. P_n^m ~ sin^|m|(theta), so:
        //   m = 0:    pi = 0 and tau -> 0 (tau ~ -n(n+1)/2 * theta near 0).
        //   |m| = 1:  pi, tau -> n(n+1)/2 at theta = 0, with parities
        //             pi(pi - d) = (-1)^{n+1} pi(d), tau(pi - d) = (-1)^n tau(d).
        //   |m| >= 2: both vanish.
        if (ma == 1) {
            const double base = 0.5 * n * (n + 1.0);
            const bool south = (x < 0.0);
            double pi1 = south ? ((n % 2 == 0) ? -base : base) : base;
            double tau1 = south ? ((n % 2 == 0) ? base : -base) : base;
            out.pi_nm = (m > 0 ? pi1 : -neg_scale * pi1);
            out.tau_nm = (m > 0 ? tau1 : neg_scale * tau1);
        }
        return out;
    }

    // Upward recurrence in degree at fixed |m|:
    //   P_m^m = (2m-1)!! sin^m, P_{m+1}^m = (2m+1) x P_m^m,
    //   (k-m+1) P_{k+1}^m = (2k+1) x P_k^m - (k+m) P_{k-1}^m.
    double pmm = odd_double_factorial(ma) * std::pow(s, ma);
    double pk = pmm, pkm1 = 0.0;
    for (int k = ma; k < n; ++k) {
        double pkp1 = ((2.0 * k + 1.0) * x * pk - (k + ma) * pkm1) / (k - ma + 1.0);
        pkm1 = pk;
        pk = pkp1;
    }
    const double pn = pk;       // P_n^|m|
    const double pnm1 = pkm1;   // P_{n-1}^|m| (zero when n == |m|)

    // tau from (1-x^2) dP/dx = (n+m) P_{n-1}^m - n x P_n^m and d/dtheta = -s d/dx.
    const double tau_abs = -((n + ma) * pnm1 - n * x * pn) / s;
    const double pi_abs = ma * pn / s;

    out.pi_nm = (m >= 0) ? pi_abs : -neg_scale * pi_abs;
    out.tau_nm = (m >= 0) ? tau_abs : neg_scale * tau_abs;
    return out;
}

void legendre_p_tau(int nmax, double theta, double* P, double* tau) {
    const double x = std::cos(theta);
    const double s = std::sin(theta);

    P[0] = 1.0;
    if (nmax >= 1)
        P[1] = x;
    for (int k = 2; k <= nmax; ++k)
        P[k] = ((2.0 * k - 1.0) * x * P[k - 1] - (k - 1.0) * P[k - 2]) / k;

    tau[0] = 0.0;
    if (std::abs(s) < 1e-9) {
        for (int k = 1; k <= nmax; ++k)
            tau[k] = 0.0;
        return;
    }
    // tau_n0 = -n (P_{n-1} - x P_n) / sin(theta)  [from (1-x^2) P' identity]
    for (int k = 1; k <= nmax; ++k)
        tau[k] = -k * (P[k - 1] - x * P[k]) / s;
}

} // namespace helscat
