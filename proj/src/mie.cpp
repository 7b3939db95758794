#include "helscat/mie.hpp"

#include <cmath>

#include "helscat/beam.hpp"
#include "helscat/constants.hpp"
#include "helscat/errors.hpp"

namespace helscat {

namespace {

// All orders 1..nmax in one pass. The logarithmic derivative
// D_n(mx) = psi_n'(mx)/psi_n(mx) comes from downward recurrence
//   D_{n-1} = n/(mx) - 1/(D_n + n/(mx)),
// started well above both nmax and |mx| where D ~ 0; psi and chi at the real
// argument x go upward (stable for the moderate x of interest here).
void mie_ab_series(int nmax, double x, cplx m, std::vector<cplx>& a, std::vector<cplx>& b) {
    const cplx mx = m * x;
    const int start = static_cast<int>(std::max(static_cast<double>(nmax), std::abs(mx))) + 16;

    std::vector<cplx> D(start + 1);
    D[start] = 0.0;
    for (int n = start; n >= 1; --n) {
        const cplx nn = static_cast<double>(n) / mx;
        D[n - 1] = nn - 1.0 / (D[n] + nn);
    }

    a.assign(nmax, 0.0);
    b.assign(nmax, 0.0);
    double psi0 = std::cos(x), psi1 = std::sin(x);
    double chi0 = -std::sin(x), chi1 = std::cos(x);
    cplx xi1 = cplx(psi1, -chi1);
    for (int n = 1; n <= nmax; ++n) {
        const double psi = (2.0 * n - 1.0) * psi1 / x - psi0;
        const double chi = (2.0 * n - 1.0) * chi1 / x - chi0;
        const cplx xi = cplx(psi, -chi);
        const cplx da = D[n] / m + static_cast<double>(n) / x;
        const cplx db = D[n] * m + static_cast<double>(n) / x;
        a[n - 1] = (da * psi - psi1) / (da * xi - xi1);
        b[n - 1] = (db * psi - psi1) / (db * xi - xi1);
        psi0 = psi1;
        psi1 = psi;
        chi0 = chi1;
        chi1 = chi;
        xi1 = cplx(psi1, -chi1);
    }
}

} // namespace

int truncation_order(double x) {
    if (!(x > 0.0))
        throw numerical_error("truncation_order: size parameter must be > 0");
    const int n = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0));
    return n < 3 ? 3 : n;
}

std::pair<cplx, cplx> mie_ab(int n, double x, cplx m_rel) {
    if (n < 1)
        throw numerical_error("mie_ab: order must be >= 1");
    if (!(x > 0.0))
        throw numerical_error("mie_ab: size parameter must be > 0");
    std::vector<cplx> a, b;
    mie_ab_series(n, x, m_rel, a, b);
    const cplx an = a[n - 1], bn = b[n - 1];
    if (!std::isfinite(an.real()) || !std::isfinite(an.imag()) ||
        !std::isfinite(bn.real()) || !std::isfinite(bn.imag()))
        throw numerical_error("mie_ab: non-finite coefficient");
    return {an, bn};
}

MieSet mie_set(double omega, const ParticleConfig& particle, int nmax_override) {
    if (!(omega > 0.0))
        throw numerical_error("mie_set: omega must be > 0");
    if (particle.material == nullptr)
        throw config_error("mie_set: particle has no material table");

    const double lambda_nm = lambda_nm_from_omega(omega);
    MieSet set;
    set.omega = omega;
    set.x = (omega / c_nm_per_s) * particle.radius_nm;
    set.m_rel = particle.material->refractive_index(lambda_nm);

    const int nmax = nmax_override > 0 ? nmax_override : truncation_order(set.x);
    std::vector<cplx> a, b;
    mie_ab_series(nmax, set.x, set.m_rel, a, b);
    set.orders.resize(nmax);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int n = 1; n <= nmax; ++n) {
        MieOrder& o = set.orders[n - 1];
        o.a = a[n - 1];
        o.b = b[n - 1];
        o.V = -(o.a + o.b) * inv_sqrt2;
        o.W = (o.a - o.b) * inv_sqrt2;
    }
    return set;
}

CrossSectionDecomposition cross_section(const MieSet& mie, const FocusExpansion& focus) {
    if (std::abs(mie.omega - focus.omega) > 1e-9 * mie.omega)
        throw config_error("cross_section: mie and focus evaluated at different frequencies");

    const double k_mm = mie.omega / c_mm_per_s;
    const double pref = 2.0 * pi / (k_mm * k_mm);
    const int nmax = std::min(mie.nmax(), focus.nmax());

    CrossSectionDecomposition out;
    out.omega = mie.omega;
    out.per_order.reserve(nmax);
    for (int n = 1; n <= nmax; ++n) {
        const double cn2 = std::norm(focus.c[n - 1]);
        const MieOrder& o = mie.order(n);
        CrossSectionDecomposition::Term t;
        t.n = n;
        t.electric = pref * cn2 * std::norm(o.a);
        t.magnetic = pref * cn2 * std::norm(o.b);
        out.per_order.push_back(t);
        out.total += t.electric + t.magnetic;
    }
    return out;
}

} // namespace helscat
