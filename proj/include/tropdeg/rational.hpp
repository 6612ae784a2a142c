#pragma once

// Exact rational scalars backed by GMP, plus the small vector helpers the
// combinatorial modules share.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropdeg {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RealVector = std::vector<double>;

/// Parses "p/q", "p", or a finite decimal such as "-0.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational from_double(double value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
RealVector to_doubles(std::span<const Rational> values);

/// Scales a nonzero rational direction to the unique primitive integer vector
/// with the same direction.
RationalVector primitive_direction(std::span<const Rational> direction);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

} // namespace tropdeg
