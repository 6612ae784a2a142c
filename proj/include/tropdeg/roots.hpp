#pragma once

// Simultaneous root finding for univariate complex polynomials: Aberth
// iteration from Newton-polygon starting radii, with a companion-matrix
// eigenvalue fallback.

#include "tropdeg/laurent.hpp"

#include <vector>

namespace tropdeg {

struct RootOptions {
    int max_iterations = 200;
    double tolerance = 1e-13; // relative correction size
};

struct RootResult {
    std::vector<Complex> roots; // with multiplicity, zero roots included
    bool converged = false;
    bool used_fallback = false;
    int iterations = 0;
};

/// Roots of c[0] + c[1] z + ... + c[d] z^d. Exactly-zero leading coefficients
/// are dropped first; a constant polynomial has no roots (converged = true).
RootResult find_roots(std::vector<Complex> coeffs, const RootOptions& options = {});

/// Horner evaluation of p and p'.
void horner(const std::vector<Complex>& coeffs, Complex z, Complex& p, Complex& dp);

} // namespace tropdeg
