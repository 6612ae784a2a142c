#pragma once
#include "tropdeg/rational.hpp"

#include <initializer_list>

// GMP needs canonical fractions; Rational(p, q) alone does not reduce.
inline tropdeg::Rational frac(long p, long q = 1)
{
    tropdeg::Rational r(p, q);
    r.canonicalize();
    return r;
}

inline tropdeg::RationalVector qv(std::initializer_list<tropdeg::Rational> xs)
{
    return tropdeg::RationalVector(xs);
}
