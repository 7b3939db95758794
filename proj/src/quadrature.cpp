#include "helscat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "helscat/constants.hpp"
#include "helscat/errors.hpp"

namespace helscat {

Quadrature gauss_legendre(int n) {
    if (n < 1)
        throw config_error("gauss_legendre: order must be >= 1");

    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);

    // Roots come in +/- pairs; iterate on the upper half only.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, good to ~1e-3 for all i.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pd = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pd = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pd;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pd * pd);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

Quadrature gauss_legendre(int n, double a, double b) {
    Quadrature q = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = mid + hw * q.nodes[i];
        q.weights[i] *= hw;
    }
    return q;
}

} // namespace helscat
