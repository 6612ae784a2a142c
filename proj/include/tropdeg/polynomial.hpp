#pragma once

// Laurent polynomials in z_1..z_n with coefficients in C{t}, and the text
// syntax shared by the CLI: sums/products of terms like `(0.5+1i)*t^-1*z1^2`,
// with parentheses, integer powers, and an optional `O(t^k)` truncation.

#include "tropdeg/laurent.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropdeg {

using Exponent = std::vector<int>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class LaurentPolynomial {
public:
    explicit LaurentPolynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

    static LaurentPolynomial constant(std::size_t num_vars, const LaurentSeries& c);
    static LaurentPolynomial variable(std::size_t num_vars, std::size_t index);

    std::size_t num_vars() const { return num_vars_; }
    const std::map<Exponent, LaurentSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * z^alpha, dropping the term if the coefficient becomes zero.
    void add_term(const Exponent& alpha, const LaurentSeries& c);

    /// Same polynomial viewed in more variables (new exponents are zero).
    LaurentPolynomial with_num_vars(std::size_t n) const;

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    LaurentPolynomial negated() const;
    LaurentPolynomial pow(int k) const;

    /// f_t(x) together with the magnitude sum sum_alpha |a_alpha(t) x^alpha|
    /// (the natural scale for residual checks).
    struct Evaluation {
        Complex value;
        double scale = 0.0;
    };
    Evaluation evaluate(Complex t, const std::vector<Complex>& x) const;

    /// Coefficients c_0..c_d of the univariate polynomial in the last variable
    /// obtained by fixing t and the first n-1 coordinates, after multiplying by
    /// the power of z_n that clears negative exponents. `shift` receives that power.
    std::vector<Complex> specialize_last(Complex t, const std::vector<Complex>& leading, int& shift) const;

private:
    std::size_t num_vars_;
    std::map<Exponent, LaurentSeries> terms_;
};

/// Parses the polynomial syntax. Variables are `t`, `z` (alias of `z1`), and
/// `z<k>` for k >= 1; the number of variables is the largest index used, or
/// `min_vars` if that is larger.
LaurentPolynomial parse_polynomial(std::string_view text, std::size_t min_vars = 0);

/// Parses a single series in t (a polynomial without z variables).
LaurentSeries parse_series(std::string_view text);

std::string to_string(const LaurentPolynomial& f);

} // namespace tropdeg
