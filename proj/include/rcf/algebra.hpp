#pragma once

// Exact arithmetic substrate: unbounded integers, exact rationals and
// canonical univariate polynomials in the parameter r.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rcf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// num/den in lowest terms, denominator > 0. Zero denominator is a hard error.
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    BigRat q(num);
    q /= BigRat(den);
    return q;
}

inline std::string rat_to_string(const BigRat& q) { return q.str(); }

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Univariate polynomial in r with BigInt coefficients, stored ascending by
/// power and canonical (no trailing zero coefficient; zero poly is empty).
class PolyR {
public:
    PolyR() = default;
    PolyR(int c) : PolyR(BigInt(c)) {}
    PolyR(BigInt c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    explicit PolyR(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static PolyR variable() { return monomial(1, 1); }

    static PolyR monomial(BigInt c, std::size_t exponent) {
        PolyR p;
        if (c != 0) {
            p.coeffs_.assign(exponent + 1, BigInt(0));
            p.coeffs_[exponent] = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const BigInt& coeff(std::size_t exponent) const {
        static const BigInt zero{0};
        return exponent < coeffs_.size() ? coeffs_[exponent] : zero;
    }

    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    // Constant term; the whole value when is_constant().
    const BigInt& constant() const { return coeff(0); }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    PolyR& operator+=(const PolyR& other) {
        if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        trim();
        return *this;
    }

    PolyR& operator-=(const PolyR& other) {
        if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        trim();
        return *this;
    }

    PolyR& operator*=(const PolyR& other) {
        *this = *this * other;
        return *this;
    }

    PolyR& operator*=(const BigInt& c) {
        if (c == 0) {
            coeffs_.clear();
        } else {
            for (auto& a : coeffs_) a *= c;
        }
        return *this;
    }

    friend PolyR operator+(PolyR a, const PolyR& b) { return a += b; }
    friend PolyR operator-(PolyR a, const PolyR& b) { return a -= b; }

    friend PolyR operator-(const PolyR& a) {
        PolyR out = a;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    // Schoolbook convolution; degrees in this library stay small.
    friend PolyR operator*(const PolyR& a, const PolyR& b) {
        if (a.is_zero() || b.is_zero()) return PolyR{};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PolyR(std::move(out));
    }

    friend PolyR operator*(PolyR a, const BigInt& c) { return a *= c; }
    friend PolyR operator*(const BigInt& c, PolyR a) { return a *= c; }

    friend bool operator==(const PolyR& a, const PolyR& b) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

inline PolyR poly_pow(const PolyR& base, unsigned exponent) {
    PolyR out{1};
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

// Coefficientwise exact division; non-divisible input is an internal error.
inline PolyR poly_div_exact(const PolyR& p, const BigInt& d) {
    if (d == 0) throw std::domain_error("poly_div_exact: zero divisor");
    std::vector<BigInt> out(p.coefficients());
    for (auto& c : out) {
        BigInt q, rem;
        boost::multiprecision::divide_qr(c, d, q, rem);
        if (rem != 0) throw std::logic_error("poly_div_exact: inexact division");
        c = std::move(q);
    }
    return PolyR(std::move(out));
}

// Canonical text form: terms by descending exponent, zero coefficients
// omitted, "r" rather than "r^1", unit coefficients written bare ("r^2",
// "-r"), the zero polynomial as "0".
inline std::string poly_format(const PolyR& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int e = p.degree(); e >= 0; --e) {
        const BigInt& c = p.coeff(static_cast<std::size_t>(e));
        if (c == 0) continue;
        const bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += '-';
        } else {
            out += negative ? '-' : '+';
        }
        const BigInt magnitude = abs(c);
        if (e == 0) {
            out += magnitude.str();
        } else {
            if (magnitude != 1) {
                out += magnitude.str();
                out += '*';
            }
            out += 'r';
            if (e > 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

// Grammar: ['+'|'-'] term (('+'|'-') term)* with term one of "c*r^e",
// "c*r", "c", "r^e", "r"; coefficients decimal digits; exponents strictly
// descending and distinct. Throws ParseError with the offending position.
inline PolyR poly_parse(std::string_view text) {
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

    auto parse_digits = [&](const char* what) -> std::string {
        if (i >= n || !is_digit(text[i])) throw ParseError(std::string("expected ") + what, i);
        const std::size_t start = i;
        while (i < n && is_digit(text[i])) ++i;
        return std::string(text.substr(start, i - start));
    };

    if (n == 0) throw ParseError("empty polynomial", 0);

    std::vector<std::pair<long, BigInt>> terms;  // (exponent, signed coefficient)
    bool first = true;
    long prev_exponent = 0;

    while (i < n) {
        const std::size_t term_start = i;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", i);
        }
        if (i >= n) throw ParseError("expected term", i);

        BigInt coeff;
        bool saw_coeff = false;
        if (is_digit(text[i])) {
            coeff = BigInt(parse_digits("coefficient"));
            saw_coeff = true;
        }

        long exponent = 0;
        if (saw_coeff && i < n && text[i] == '*') {
            ++i;
            if (i >= n || text[i] != 'r') throw ParseError("expected 'r' after '*'", i);
            ++i;
            exponent = 1;
        } else if (!saw_coeff) {
            if (i >= n || text[i] != 'r') throw ParseError("expected coefficient or 'r'", i);
            coeff = 1;
            ++i;
            exponent = 1;
        }
        if (exponent == 1 && i < n && text[i] == '^') {
            ++i;
            const std::size_t exp_pos = i;
            const std::string digits = parse_digits("exponent");
            if (digits.size() > 6) throw ParseError("exponent too large", exp_pos);
            exponent = std::stol(digits);
        }

        if (!first && exponent >= prev_exponent)
            throw ParseError("exponents must be strictly descending", term_start);
        prev_exponent = exponent;
        first = false;
        terms.emplace_back(exponent, sign * coeff);
    }

    std::vector<BigInt> coeffs(static_cast<std::size_t>(terms.front().first) + 1, BigInt(0));
    for (auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = std::move(c);
    return PolyR(std::move(coeffs));
}

inline std::ostream& operator<<(std::ostream& os, const PolyR& p) { return os << poly_format(p); }

// C(n,k); zero outside 0 <= k <= n, negative n rejected.
inline BigInt binomial(const BigInt& n, const BigInt& k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0;
    BigInt kk = k;
    if (kk > n - kk) kk = n - kk;
    BigInt result = 1;
    for (BigInt i = 1; i <= kk; ++i) result = result * (n - kk + i) / i;
    return result;
}

inline BigInt binomial(int n, int k) { return binomial(BigInt(n), BigInt(k)); }

inline BigInt factorial(unsigned n) {
    BigInt result = 1;
    for (unsigned i = 2; i <= n; ++i) result *= i;
    return result;
}

inline BigInt int_pow(const BigInt& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

}  // namespace rcf
