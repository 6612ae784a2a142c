#include "tropdeg/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace tropdeg {

LaurentPolynomial LaurentPolynomial::constant(std::size_t num_vars, const LaurentSeries& c)
{
    LaurentPolynomial f(num_vars);
    f.add_term(Exponent(num_vars, 0), c);
    return f;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t num_vars, std::size_t index)
{
    if (index >= num_vars) {
        throw std::out_of_range("variable index out of range");
    }
    Exponent alpha(num_vars, 0);
    alpha[index] = 1;
    LaurentPolynomial f(num_vars);
    f.add_term(alpha, LaurentSeries::constant(1.0));
    return f;
}

void LaurentPolynomial::add_term(const Exponent& alpha, const LaurentSeries& c)
{
    if (alpha.size() != num_vars_) {
        throw std::invalid_argument("add_term: exponent length does not match number of variables");
    }
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
        if (!c.is_zero()) {
            terms_.emplace(alpha, c);
        }
        return;
    }
    LaurentSeries sum = add(it->second, c);
    if (sum.is_zero()) {
        terms_.erase(it);
    } else {
        it->second = sum;
    }
}

LaurentPolynomial LaurentPolynomial::with_num_vars(std::size_t n) const
{
    if (n < num_vars_) {
        throw std::invalid_argument("with_num_vars: cannot drop variables");
    }
    LaurentPolynomial out(n);
    for (const auto& [alpha, c] : terms_) {
        Exponent beta = alpha;
        beta.resize(n, 0);
        out.terms_.emplace(std::move(beta), c);
    }
    return out;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    const std::size_t n = std::max(a.num_vars_, b.num_vars_);
    LaurentPolynomial out = a.with_num_vars(n);
    for (const auto& [alpha, c] : b.with_num_vars(n).terms_) {
        out.add_term(alpha, c);
    }
    return out;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    const std::size_t n = std::max(a.num_vars_, b.num_vars_);
    const LaurentPolynomial aa = a.with_num_vars(n);
    const LaurentPolynomial bb = b.with_num_vars(n);
    LaurentPolynomial out(n);
    for (const auto& [alpha, ca] : aa.terms_) {
        for (const auto& [beta, cb] : bb.terms_) {
            Exponent gamma(n);
            for (std::size_t i = 0; i < n; ++i) {
                gamma[i] = alpha[i] + beta[i];
            }
            out.add_term(gamma, mul(ca, cb));
        }
    }
    return out;
}

LaurentPolynomial LaurentPolynomial::negated() const
{
    LaurentPolynomial out(num_vars_);
    for (const auto& [alpha, c] : terms_) {
        out.terms_.emplace(alpha, c.negated());
    }
    return out;
}

LaurentPolynomial LaurentPolynomial::pow(int k) const
{
    if (k < 0) {
        throw std::invalid_argument("pow: negative exponent");
    }
    LaurentPolynomial out = constant(num_vars_, LaurentSeries::constant(1.0));
    for (int i = 0; i < k; ++i) {
        out = out * *this;
    }
    return out;
}

LaurentPolynomial::Evaluation LaurentPolynomial::evaluate(Complex t, const std::vector<Complex>& x) const
{
    if (x.size() != num_vars_) {
        throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    Evaluation out{0.0, 0.0};
    for (const auto& [alpha, c] : terms_) {
        Complex monomial = c.eval_at(t).value;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (alpha[i] != 0) {
                monomial *= std::pow(x[i], static_cast<double>(alpha[i]));
            }
        }
        out.value += monomial;
        out.scale += std::abs(monomial);
    }
    return out;
}

std::vector<Complex> LaurentPolynomial::specialize_last(Complex t, const std::vector<Complex>& leading,
                                                        int& shift) const
{
    if (num_vars_ == 0) {
        throw std::invalid_argument("specialize_last: polynomial has no variables");
    }
    if (leading.size() + 1 != num_vars_) {
        throw std::invalid_argument("specialize_last: expected n-1 leading coordinates");
    }
    const std::size_t last = num_vars_ - 1;
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& [alpha, c] : terms_) {
        lo = std::min(lo, alpha[last]);
        hi = std::max(hi, alpha[last]);
    }
    if (terms_.empty()) {
        shift = 0;
        return {};
    }
    shift = -lo;
    std::vector<Complex> coeffs(static_cast<std::size_t>(hi - lo + 1), Complex(0.0, 0.0));
    for (const auto& [alpha, c] : terms_) {
        Complex value = c.eval_at(t).value;
        for (std::size_t i = 0; i < last; ++i) {
            if (alpha[i] != 0) {
                value *= std::pow(leading[i], static_cast<double>(alpha[i]));
            }
        }
        coeffs[static_cast<std::size_t>(alpha[last] - lo)] += value;
    }
    return coeffs;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

    LaurentPolynomial parse()
    {
        LaurentPolynomial f = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        if (truncation_ != LaurentSeries::kExact) {
            LaurentPolynomial truncated(f.num_vars());
            for (const auto& [alpha, c] : f.terms()) {
                truncated.add_term(alpha, LaurentSeries(c.terms(), std::min(c.trunc_order(), truncation_)));
            }
            return truncated;
        }
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    LaurentPolynomial expr()
    {
        LaurentPolynomial acc(num_vars_);
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        LaurentPolynomial first = term();
        acc = negate ? first.negated() : first;
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc + term().negated();
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPolynomial term()
    {
        LaurentPolynomial acc = power();
        while (accept('*')) {
            acc = acc * power();
        }
        return acc;
    }

    int signed_int()
    {
        skip_ws();
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected integer exponent");
        }
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 100000) {
                fail("exponent too large");
            }
            ++pos_;
        }
        return static_cast<int>(negative ? -value : value);
    }

    LaurentPolynomial power()
    {
        LaurentPolynomial base = primary();
        if (!accept('^')) {
            return base;
        }
        const std::size_t at = pos_;
        const int k = signed_int();
        if (k >= 0) {
            return base.pow(k);
        }
        if (base.terms().size() != 1 || base.terms().begin()->second.terms().size() != 1) {
            pos_ = at;
            fail("negative power of a non-monomial");
        }
        const auto& [alpha, c] = *base.terms().begin();
        const auto& [tk, coeff] = *c.terms().begin();
        LaurentPolynomial inverse(base.num_vars());
        Exponent neg(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            neg[i] = -alpha[i];
        }
        inverse.add_term(neg, LaurentSeries::monomial(1.0 / coeff, -tk));
        return inverse.pow(-k);
    }

    LaurentPolynomial number()
    {
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) {
            fail("expected number");
        }
        pos_ += static_cast<std::size_t>(end - begin);
        Complex c(value, 0.0);
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            ++pos_;
            c = Complex(0.0, value);
        }
        if (!std::isfinite(value)) {
            fail("non-finite number");
        }
        return LaurentPolynomial::constant(num_vars_, LaurentSeries::constant(c));
    }

    LaurentPolynomial primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (c == '(') {
            ++pos_;
            LaurentPolynomial inner = expr();
            expect(')');
            return inner;
        }
        if (c == 'i') {
            ++pos_;
            return LaurentPolynomial::constant(num_vars_, LaurentSeries::constant(Complex(0.0, 1.0)));
        }
        if (c == 't') {
            ++pos_;
            return LaurentPolynomial::constant(num_vars_, LaurentSeries::monomial(1.0, 1));
        }
        if (c == 'z') {
            ++pos_;
            std::size_t index = 1;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                index = 0;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    index = index * 10 + static_cast<std::size_t>(text_[pos_] - '0');
                    ++pos_;
                }
                if (index == 0) {
                    fail("variable indices start at z1");
                }
            }
            return LaurentPolynomial::variable(num_vars_, index - 1);
        }
        if (c == 'O') {
            ++pos_;
            expect('(');
            expect('t');
            int k = 1;
            if (accept('^')) {
                k = signed_int();
            }
            expect(')');
            truncation_ = std::min<std::int64_t>(truncation_, static_cast<std::int64_t>(k) - 1);
            return LaurentPolynomial(num_vars_);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t num_vars_;
    std::size_t pos_ = 0;
    std::int64_t truncation_ = LaurentSeries::kExact;
};

std::size_t scan_num_vars(std::string_view text)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'z') {
            continue;
        }
        std::size_t j = i + 1;
        std::size_t index = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            index = index * 10 + static_cast<std::size_t>(text[j] - '0');
            ++j;
        }
        n = std::max(n, j == i + 1 ? std::size_t{1} : index);
    }
    return n;
}

} // namespace

LaurentPolynomial parse_polynomial(std::string_view text, std::size_t min_vars)
{
    const std::size_t n = std::max(scan_num_vars(text), min_vars);
    return Parser(text, n).parse();
}

LaurentSeries parse_series(std::string_view text)
{
    LaurentPolynomial f = parse_polynomial(text);
    if (f.num_vars() != 0) {
        throw ParseError("series must not contain z variables", 0);
    }
    if (f.is_zero()) {
        return LaurentSeries();
    }
    return f.terms().begin()->second;
}

std::string to_string(const LaurentPolynomial& f)
{
    if (f.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c] : f.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << to_string(c) << ")";
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] != 0) {
                os << "*z" << (i + 1);
                if (alpha[i] != 1) {
                    os << "^" << alpha[i];
                }
            }
        }
    }
    return os.str();
}

} // namespace tropdeg
