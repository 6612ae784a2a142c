#include "tropdeg/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace tropdeg {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

Rational parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    mpz_class z(std::string(s), 10);
    if (negative) {
        z = -z;
    }
    return Rational(z);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        Rational num = parse_integer(text.substr(0, slash), text);
        Rational den = parse_integer(text.substr(slash + 1), text);
        if (is_zero(den)) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        Rational r = num / den;
        r.canonicalize();
        return r;
    }
    const auto dot_pos = text.find('.');
    if (dot_pos == std::string_view::npos) {
        return parse_integer(text, text);
    }
    std::string_view int_part = text.substr(0, dot_pos);
    std::string_view frac_part = text.substr(dot_pos + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
        negative = int_part.front() == '-';
        int_part.remove_prefix(1);
    }
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    mpz_class digits(std::string(int_part) + std::string(frac_part), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational r(digits, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Rational from_double(double value)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("cannot convert non-finite double to rational");
    }
    Rational r(value);
    r.canonicalize();
    return r;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

RealVector to_doubles(std::span<const Rational> values)
{
    RealVector out;
    out.reserve(values.size());
    for (const auto& v : values) {
        out.push_back(v.get_d());
    }
    return out;
}

RationalVector primitive_direction(std::span<const Rational> direction)
{
    mpz_class lcm_den = 1;
    for (const auto& x : direction) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& x : direction) {
        mpz_class v = x.get_num() * (lcm_den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    if (g == 0) {
        throw std::invalid_argument("primitive_direction: zero vector");
    }
    RationalVector out;
    for (auto& v : ints) {
        out.emplace_back(mpz_class(v / g));
    }
    return out;
}

} // namespace tropdeg
