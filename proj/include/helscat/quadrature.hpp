#pragma once

#include <vector>

namespace helscat {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n on [-1, 1]; exact for polynomials up to
// degree 2n-1. Nodes by Newton iteration on P_n with the asymptotic cosine
// start; accurate to machine precision for n up to a few thousand.
Quadrature gauss_legendre(int n);

// Same rule affinely mapped to [a, b].
Quadrature gauss_legendre(int n, double a, double b);

} // namespace helscat
