#pragma once

// Min-plus polynomials f^trop(w) = min_alpha (alpha.w + c_alpha) with exact
// rational weights, and their corner loci as polyhedral complexes.

#include "tropdeg/polyhedral.hpp"
#include "tropdeg/polynomial.hpp"
#include "tropdeg/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace tropdeg {

/// A monomial valuation point w in Q^n (val_w(z^alpha) = alpha.w).
using MonomialValuationPoint = RationalVector;

class TropicalPolynomial {
public:
    /// Requires at least one term, all exponents of length n.
    TropicalPolynomial(std::size_t n, std::map<Exponent, Rational> terms);

    /// Weights are the valuations of the coefficients; zero polynomial rejected.
    static TropicalPolynomial from_laurent(const LaurentPolynomial& f);

    std::size_t dim() const { return n_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }

    friend bool operator==(const TropicalPolynomial&, const TropicalPolynomial&) = default;

private:
    std::size_t n_;
    std::map<Exponent, Rational> terms_;
};

struct TropicalValue {
    Rational value;
    std::vector<Exponent> argmin; // in exponent order
};

TropicalValue trop_eval(const TropicalPolynomial& f, const MonomialValuationPoint& w);

/// True iff the minimum is attained by at least two terms (exact).
bool in_tropical_hypersurface(const TropicalPolynomial& f, const MonomialValuationPoint& w);

/// The corner locus as a complex. A cell is the closure of the set of points
/// whose argmin is a fixed set S with |S| >= 2; S is recorded as the dual face.
/// Cells are ordered by dimension, then by dual face.
PolyhedralComplex tropical_hypersurface(const TropicalPolynomial& f);

/// Intersection of the hypersurfaces of the GIVEN generators. This can be
/// strictly larger than the tropical variety of the ideal they generate.
class TropicalPrevariety {
public:
    explicit TropicalPrevariety(std::vector<TropicalPolynomial> generators);

    const std::vector<TropicalPolynomial>& generators() const { return generators_; }
    std::size_t dim() const { return generators_.front().dim(); }
    bool contains(const MonomialValuationPoint& w) const;

    /// Nonempty intersections of one cell from each hypersurface (deduplicated).
    std::vector<PolyhedralCell> cells() const;

    /// Always true: membership is only for the listed generators.
    static constexpr bool may_strictly_contain_variety = true;

private:
    std::vector<TropicalPolynomial> generators_;
};

std::string to_string(const TropicalPolynomial& f);

} // namespace tropdeg
