#include "tropdeg/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tropdeg {

namespace {

std::int64_t saturating_add(std::int64_t a, std::int64_t b)
{
    if (a == LaurentSeries::kExact || b == LaurentSeries::kExact) {
        return LaurentSeries::kExact;
    }
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        return LaurentSeries::kExact;
    }
    return out;
}

} // namespace

std::string to_string(const ExtendedInt& v)
{
    return v.is_infinite() ? std::string("+inf") : std::to_string(v.value());
}

LaurentSeries::LaurentSeries(std::map<std::int64_t, Complex> terms, std::int64_t trunc_order)
    : trunc_order_(trunc_order)
{
    for (const auto& [k, c] : terms) {
        if (k > trunc_order_) {
            continue;
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("LaurentSeries: non-finite coefficient");
        }
        if (c != Complex(0.0, 0.0)) {
            terms_.emplace(k, c);
        }
    }
}

LaurentSeries LaurentSeries::monomial(Complex c, std::int64_t exponent, std::int64_t trunc_order)
{
    return LaurentSeries({{exponent, c}}, trunc_order);
}

ExtendedInt LaurentSeries::valuation() const
{
    if (terms_.empty()) {
        return ExtendedInt::infinity();
    }
    return ExtendedInt(terms_.begin()->first);
}

Complex LaurentSeries::coefficient(std::int64_t k) const
{
    auto it = terms_.find(k);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

LaurentSeries LaurentSeries::negated() const
{
    LaurentSeries out = *this;
    for (auto& [k, c] : out.terms_) {
        c = -c;
    }
    return out;
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b)
{
    LaurentSeries out;
    out.trunc_order_ = std::min(a.trunc_order_, b.trunc_order_);
    out.possible_cancellation_ = a.possible_cancellation_ || b.possible_cancellation_;
    auto push = [&](std::int64_t k, Complex x, Complex y) {
        if (k > out.trunc_order_) {
            return;
        }
        const Complex sum = x + y;
        const double scale = std::max(std::abs(x), std::abs(y));
        if (std::abs(sum) <= LaurentSeries::kCancellationThreshold * scale) {
            out.possible_cancellation_ = true;
            return;
        }
        out.terms_.emplace(k, sum);
    };
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
            push(ia->first, ia->second, 0.0);
            ++ia;
        } else if (ia == a.terms_.end() || ib->first < ia->first) {
            push(ib->first, 0.0, ib->second);
            ++ib;
        } else {
            push(ia->first, ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b)
{
    LaurentSeries out;
    out.possible_cancellation_ = a.possible_cancellation_ || b.possible_cancellation_;
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    const std::int64_t va = a.terms_.begin()->first;
    const std::int64_t vb = b.terms_.begin()->first;
    out.trunc_order_ = std::min(saturating_add(va, b.trunc_order_), saturating_add(vb, a.trunc_order_));

    std::map<std::int64_t, Complex> sums;
    std::map<std::int64_t, double> scales;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const std::int64_t k = ka + kb;
            if (k > out.trunc_order_) {
                continue;
            }
            const Complex p = ca * cb;
            sums[k] += p;
            scales[k] += std::abs(p);
        }
    }
    for (const auto& [k, c] : sums) {
        if (std::abs(c) <= LaurentSeries::kCancellationThreshold * scales[k]) {
            out.possible_cancellation_ = true;
            continue;
        }
        out.terms_.emplace(k, c);
    }
    return out;
}

SeriesEvaluation LaurentSeries::eval_at(Complex t) const
{
    const double r = std::abs(t);
    if (r == 0.0) {
        throw std::invalid_argument("eval_at: t = 0 is outside the punctured disc");
    }
    if (!(r < 1.0)) {
        throw std::invalid_argument("eval_at: requires 0 < |t| < 1");
    }
    SeriesEvaluation out;
    out.value = 0.0;
    // Highest exponent first keeps Horner-like accumulation of small terms.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        out.value += it->second * std::pow(t, static_cast<double>(it->first));
    }
    if (is_exact()) {
        return out;
    }
    double max_coeff = 0.0;
    for (const auto& [k, c] : terms_) {
        max_coeff = std::max(max_coeff, std::abs(c));
    }
    if (max_coeff == 0.0) {
        max_coeff = 1.0;
    }
    out.error_bound = max_coeff * std::pow(r, static_cast<double>(trunc_order_ + 1)) / (1.0 - r);
    if (terms_.size() >= 2) {
        auto last = terms_.rbegin();
        auto prev = std::next(last);
        const double m_last = std::abs(last->second) * std::pow(r, static_cast<double>(last->first));
        const double m_prev = std::abs(prev->second) * std::pow(r, static_cast<double>(prev->first));
        out.reliable = m_last < m_prev;
    }
    return out;
}

std::string to_string(const LaurentSeries& a)
{
    std::ostringstream os;
    os.precision(17);
    if (a.is_zero()) {
        os << "0";
    }
    bool first = true;
    for (const auto& [k, c] : a.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.real();
        if (c.imag() != 0.0) {
            os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
        }
        os << ")";
        if (k != 0) {
            os << "*t^" << k;
        }
    }
    if (!a.is_exact()) {
        os << " + O(t^" << a.trunc_order() + 1 << ")";
    }
    return os.str();
}

} // namespace tropdeg
