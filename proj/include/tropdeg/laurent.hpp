#pragma once

// Truncated Laurent series over C with exact integer exponents: the working
// model of the valued field C{t}.

#include <complex>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

namespace tropdeg {

using Complex = std::complex<double>;

/// An element of Z ∪ {+∞}.
class ExtendedInt {
public:
    constexpr ExtendedInt() = default;
    constexpr ExtendedInt(std::int64_t v) : value_(v), infinite_(false) {}
    static constexpr ExtendedInt infinity()
    {
        ExtendedInt e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    /// Only meaningful when finite.
    constexpr std::int64_t value() const { return value_; }

    friend constexpr bool operator==(const ExtendedInt&, const ExtendedInt&) = default;
    friend constexpr std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b)
    {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ <=> b.infinite_;
        }
        return a.value_ <=> b.value_;
    }
    friend constexpr ExtendedInt operator+(const ExtendedInt& a, const ExtendedInt& b)
    {
        if (a.infinite_ || b.infinite_) {
            return infinity();
        }
        return ExtendedInt(a.value_ + b.value_);
    }

private:
    std::int64_t value_ = 0;
    bool infinite_ = true;
};

std::string to_string(const ExtendedInt& v);

struct SeriesEvaluation {
    Complex value;
    double error_bound = 0.0; // heuristic geometric-tail estimate; 0 for exact polynomials
    bool reliable = true;     // false when stored terms are not decaying at |t|
};

class LaurentSeries {
public:
    /// Truncation order meaning "no unknown tail": the series is an exact Laurent polynomial.
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();
    /// Relative magnitude below which a sum is treated as cancelled.
    static constexpr double kCancellationThreshold = 1e-12;

    /// The exact zero series.
    LaurentSeries() = default;
    LaurentSeries(std::map<std::int64_t, Complex> terms, std::int64_t trunc_order = kExact);

    static LaurentSeries constant(Complex c) { return monomial(c, 0); }
    static LaurentSeries monomial(Complex c, std::int64_t exponent, std::int64_t trunc_order = kExact);

    const std::map<std::int64_t, Complex>& terms() const { return terms_; }
    std::int64_t trunc_order() const { return trunc_order_; }
    bool is_exact() const { return trunc_order_ == kExact; }
    bool is_zero() const { return terms_.empty(); }
    /// Set when some coefficient was dropped by (near-)cancellation in this
    /// series or any operand it was computed from.
    bool possible_cancellation() const { return possible_cancellation_; }

    ExtendedInt valuation() const;
    Complex coefficient(std::int64_t k) const;

    friend LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries negated() const;

    /// Partial sum at a point 0 < |t| < 1; rejects t outside that range.
    SeriesEvaluation eval_at(Complex t) const;

    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    std::map<std::int64_t, Complex> terms_;
    std::int64_t trunc_order_ = kExact;
    bool possible_cancellation_ = false;
};

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b.negated()); }

inline ExtendedInt valuation(const LaurentSeries& a) { return a.valuation(); }

/// Human-readable form using the same syntax the parser accepts.
std::string to_string(const LaurentSeries& a);

} // namespace tropdeg
