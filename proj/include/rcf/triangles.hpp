#pragma once

// The four triangular arrays u(n,k), U(n,k), u_r(n,k), U_r(n,k), computed
// symbolically in r via several independent routes, plus the conversion and
// generating-function identities connecting them.
//
// Defining recurrences (the source of truth for every other route):
//   u_r(n,k) = u_r(n-1,k-1) - ((n-1)^2 + r) u_r(n-1,k),  u_r(n,0) = (-1)^n prod_{i<n} (i^2+r)
//   U_r(n,k) = U_r(n-1,k-1) + (k^2 + r) U_r(n-1,k),      U_r(n,0) = r^n
// The r=0 kinds are the same recurrences with the r term dropped.

#include <rcf/algebra.hpp>

#include <span>
#include <stdexcept>
#include <vector>

namespace rcf {

enum class TriangleKind { first_kind_r, second_kind_r, first_kind, second_kind };

inline bool kind_is_first(TriangleKind k) {
    return k == TriangleKind::first_kind_r || k == TriangleKind::first_kind;
}

inline bool kind_uses_r(TriangleKind k) {
    return k == TriangleKind::first_kind_r || k == TriangleKind::second_kind_r;
}

inline BigInt int_div_exact(const BigInt& a, const BigInt& b) {
    if (b == 0) throw std::domain_error("int_div_exact: zero divisor");
    BigInt q, rem;
    boost::multiprecision::divide_qr(a, b, q, rem);
    if (rem != 0) throw std::logic_error("int_div_exact: inexact division");
    return q;
}

/// Lower-triangular table {(n,k) -> PolyR}, filled eagerly row by row from
/// the two-term recurrence. Immutable after construction; queries with k < 0
/// or k > n return the zero polynomial.
class Triangle {
public:
    Triangle(TriangleKind kind, int max_n) : kind_(kind), max_n_(max_n) {
        if (max_n < 0) throw std::invalid_argument("Triangle: negative max_n");
        const bool first = kind_is_first(kind);
        const PolyR r_part = kind_uses_r(kind) ? PolyR::variable() : PolyR{};

        rows_.reserve(static_cast<std::size_t>(max_n) + 1);
        rows_.push_back({PolyR{1}});
        for (int n = 1; n <= max_n; ++n) {
            const auto& prev = rows_.back();
            std::vector<PolyR> row(static_cast<std::size_t>(n) + 1);
            if (first) {
                const PolyR w = PolyR{BigInt(n - 1) * (n - 1)} + r_part;
                row[0] = -(w * prev[0]);
                for (int k = 1; k < n; ++k) row[k] = prev[k - 1] - w * prev[k];
            } else {
                row[0] = r_part * prev[0];
                for (int k = 1; k < n; ++k) {
                    const PolyR w = PolyR{BigInt(k) * k} + r_part;
                    row[k] = prev[k - 1] + w * prev[k];
                }
            }
            row[n] = prev[n - 1];  // top entry is always 1
            rows_.push_back(std::move(row));
        }
    }

    TriangleKind kind() const { return kind_; }
    int max_n() const { return max_n_; }

    const PolyR& at(int n, int k) const {
        static const PolyR zero{};
        if (n < 0 || n > max_n_) throw std::out_of_range("Triangle::at: row out of range");
        if (k < 0 || k > n) return zero;
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }

private:
    TriangleKind kind_;
    int max_n_;
    std::vector<std::vector<PolyR>> rows_;
};

inline Triangle build_triangle(TriangleKind kind, int max_n) { return Triangle(kind, max_n); }

// Explicit value of the second-kind array at an integer r:
//   U_r(n,k) = (1/(2k)!) [ (-1)^k C(2k,k) r^n + 2 sum_{j=1}^{k} (-1)^{k+j} C(2k,k-j) (j^2+r)^n ].
// This is the symmetric sum over j = -k..k with the j=0 term counted once;
// the division by (2k)! is exact.
inline BigInt explicit_second_kind(int n, int k, const BigInt& r) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("explicit_second_kind: need 0 <= k <= n");
    const unsigned un = static_cast<unsigned>(n);
    BigInt acc = (k % 2 == 0 ? 1 : -1) * binomial(2 * k, k) * int_pow(r, un);
    for (int j = 1; j <= k; ++j) {
        const BigInt term = binomial(2 * k, k - j) * int_pow(BigInt(j) * j + r, un);
        acc += ((k + j) % 2 == 0 ? 2 : -2) * term;
    }
    return int_div_exact(acc, factorial(static_cast<unsigned>(2 * k)));
}

// Variant that weights the j=0 term at the full 2/(2k)! like every other
// term. Disagrees with the recurrence whenever r > 0 and k >= 1 (e.g.
// n=3, k=2, r=2 gives 13 where the recurrence gives 11); kept as a
// regression witness. The result is not integral in general.
inline BigRat explicit_second_kind_j0_doubled(int n, int k, const BigInt& r) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("explicit_second_kind_j0_doubled: need 0 <= k <= n");
    const unsigned un = static_cast<unsigned>(n);
    BigInt acc = 0;
    for (int j = 0; j <= k; ++j) {
        const BigInt term = binomial(2 * k, k - j) * int_pow(BigInt(j) * j + r, un);
        acc += ((k + j) % 2 == 0 ? 2 : -2) * term;
    }
    return make_rat(acc, factorial(static_cast<unsigned>(2 * k)));
}

// First-kind row recurrence:
//   u_r(n,k) = sum_{l=k}^{n} (-1)^{n-l} u_r(l-1,k-1) prod_{i=l}^{n-1} (i^2+r).
// Consumes column k-1 of a recurrence-built triangle.
inline PolyR row_recurrence_first(const Triangle& tri, int n, int k) {
    if (!kind_is_first(tri.kind())) throw std::invalid_argument("row_recurrence_first: first-kind triangle required");
    if (k < 1 || k > n) throw std::invalid_argument("row_recurrence_first: need 1 <= k <= n");
    const PolyR r_part = kind_uses_r(tri.kind()) ? PolyR::variable() : PolyR{};
    PolyR acc;
    PolyR suffix{1};  // prod_{i=l}^{n-1} (i^2+r), built descending from l = n
    for (int l = n; l >= k; --l) {
        PolyR term = tri.at(l - 1, k - 1) * suffix;
        if ((n - l) % 2 != 0) term = -term;
        acc += term;
        suffix *= PolyR{BigInt(l - 1) * (l - 1)} + r_part;
    }
    return acc;
}

// Second-kind geometric row recurrence:
//   U_r(n,k) = sum_{l=k}^{n} U_r(l-1,k-1) (k^2+r)^{n-l}.
inline PolyR geometric_recurrence_second(const Triangle& tri, int n, int k) {
    if (kind_is_first(tri.kind())) throw std::invalid_argument("geometric_recurrence_second: second-kind triangle required");
    if (k < 1 || k > n) throw std::invalid_argument("geometric_recurrence_second: need 1 <= k <= n");
    const PolyR r_part = kind_uses_r(tri.kind()) ? PolyR::variable() : PolyR{};
    const PolyR w = PolyR{BigInt(k) * k} + r_part;
    PolyR acc;
    PolyR power{1};
    for (int l = n; l >= k; --l) {
        acc += tri.at(l - 1, k - 1) * power;
        power *= w;
    }
    return acc;
}

enum class SpecialValue {
    first_kind_k1,           // u_r(n,1)
    first_kind_penultimate,  // u_r(n,n-1)
    second_kind_k1,          // U_r(n,1)
    second_kind_penultimate  // U_r(n,n-1)
};

// Closed forms observable directly from the recurrences. u_r(n,1) is the
// division-free sum-of-products form sum_i prod_{l != i} (l^2+r), signed.
inline PolyR special_value(SpecialValue which, int n) {
    if (n < 1) throw std::invalid_argument("special_value: need n >= 1");
    const PolyR r = PolyR::variable();
    switch (which) {
        case SpecialValue::first_kind_k1: {
            PolyR acc;
            for (int i = 0; i < n; ++i) {
                PolyR prod{1};
                for (int l = 0; l < n; ++l)
                    if (l != i) prod *= PolyR{BigInt(l) * l} + r;
                acc += prod;
            }
            return (n - 1) % 2 == 0 ? acc : -acc;
        }
        case SpecialValue::first_kind_penultimate:
        case SpecialValue::second_kind_penultimate: {
            PolyR acc;
            for (int l = 0; l < n; ++l) acc += PolyR{BigInt(l) * l} + r;
            return which == SpecialValue::first_kind_penultimate ? -acc : acc;
        }
        case SpecialValue::second_kind_k1:
            return poly_pow(r + PolyR{1}, static_cast<unsigned>(n)) - poly_pow(r, static_cast<unsigned>(n));
    }
    throw std::invalid_argument("special_value: unknown selector");
}

// U_r(n,k) = sum_{l=k}^{n} C(n,l) U(l,k) r^{n-l}, from the r = 0 triangle.
inline PolyR convert_Ur_from_U(const Triangle& plain, int n, int k) {
    if (plain.kind() != TriangleKind::second_kind)
        throw std::invalid_argument("convert_Ur_from_U: r=0 second-kind triangle required");
    if (k < 0 || k > n) throw std::invalid_argument("convert_Ur_from_U: need 0 <= k <= n");
    PolyR acc;
    for (int l = k; l <= n; ++l)
        acc += PolyR::monomial(binomial(n, l) * plain.at(l, k).constant(), static_cast<std::size_t>(n - l));
    return acc;
}

// U(n,k) = sum_{i=k}^{n} C(n,i) (-r)^{n-i} U_r(i,k); the sum over polynomials
// in r collapses to a constant.
inline PolyR convert_U_from_Ur(const Triangle& tri, int n, int k) {
    if (tri.kind() != TriangleKind::second_kind_r)
        throw std::invalid_argument("convert_U_from_Ur: second-kind r-triangle required");
    if (k < 0 || k > n) throw std::invalid_argument("convert_U_from_Ur: need 0 <= k <= n");
    PolyR acc;
    for (int i = k; i <= n; ++i) {
        const int e = n - i;
        const BigInt c = (e % 2 == 0 ? 1 : -1) * binomial(n, i);
        acc += PolyR::monomial(c, static_cast<std::size_t>(e)) * tri.at(i, k);
    }
    if (!acc.is_constant()) throw std::logic_error("convert_U_from_Ur: sum did not collapse to a constant");
    return acc;
}

// u_r(n,k) = sum_{i=k}^{n} C(i,k) (-r)^{i-k} u(n,i), from the r = 0 triangle.
inline PolyR convert_ur_from_u(const Triangle& plain, int n, int k) {
    if (plain.kind() != TriangleKind::first_kind)
        throw std::invalid_argument("convert_ur_from_u: r=0 first-kind triangle required");
    if (k < 0 || k > n) throw std::invalid_argument("convert_ur_from_u: need 0 <= k <= n");
    PolyR acc;
    for (int i = k; i <= n; ++i) {
        const int e = i - k;
        const BigInt c = (e % 2 == 0 ? 1 : -1) * binomial(i, k) * plain.at(n, i).constant();
        acc += PolyR::monomial(c, static_cast<std::size_t>(e));
    }
    return acc;
}

// u(n,k) = sum_{i=k}^{n} C(i,k) r^{i-k} u_r(n,i); collapses to a constant.
inline PolyR convert_u_from_ur(const Triangle& tri, int n, int k) {
    if (tri.kind() != TriangleKind::first_kind_r)
        throw std::invalid_argument("convert_u_from_ur: first-kind r-triangle required");
    if (k < 0 || k > n) throw std::invalid_argument("convert_u_from_ur: need 0 <= k <= n");
    PolyR acc;
    for (int i = k; i <= n; ++i)
        acc += PolyR::monomial(binomial(i, k), static_cast<std::size_t>(i - k)) * tri.at(n, i);
    if (!acc.is_constant()) throw std::logic_error("convert_u_from_ur: sum did not collapse to a constant");
    return acc;
}

// Row n of the signed Stirling numbers of the first kind,
// s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k), s(0,0) = 1.
inline std::vector<BigInt> stirling_first_row(int n) {
    std::vector<BigInt> row{1};
    for (int m = 1; m <= n; ++m) {
        std::vector<BigInt> next(static_cast<std::size_t>(m) + 1, BigInt(0));
        for (int j = 0; j < m; ++j) {
            next[j + 1] += row[j];
            next[j] -= BigInt(m - 1) * row[j];
        }
        row = std::move(next);
    }
    return row;
}

inline BigInt stirling_first(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    return stirling_first_row(n)[static_cast<std::size_t>(k)];
}

// u_r(n,n-k) = sum_{i=0}^{k} sum_{j=-i}^{i} (-1)^{k+j} C(n-i,k-i)
//              s(n,n-i+j) s(n,n-i-j) r^{k-i}.
inline PolyR ur_via_stirling(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("ur_via_stirling: need 0 <= k <= n");
    const int kk = n - k;
    const std::vector<BigInt> s = stirling_first_row(n);
    auto s_at = [&](int m) -> BigInt {
        return (m < 0 || m > n) ? BigInt(0) : s[static_cast<std::size_t>(m)];
    };
    std::vector<BigInt> coeffs(static_cast<std::size_t>(kk) + 1, BigInt(0));
    for (int i = 0; i <= kk; ++i) {
        const BigInt c = binomial(n - i, kk - i);
        BigInt inner = 0;
        for (int j = -i; j <= i; ++j) {
            const BigInt prod = s_at(n - i + j) * s_at(n - i - j);
            inner += ((kk + j) % 2 == 0 ? prod : -prod);
        }
        coeffs[static_cast<std::size_t>(kk - i)] = c * inner;
    }
    return PolyR(std::move(coeffs));
}

enum class ConnectionKind { first, second };

// Point-checks the degree-n connection identities at >= n+1 distinct integer
// sample points, with r fixed to an integer:
//   prod_{i=0}^{n-1} (x - i^2) = sum_k u_r(n,k) (x+r)^k
//   (x+r)^n = sum_k U_r(n,k) prod_{i=0}^{k-1} (x - i^2)
inline bool verify_connection_identity(ConnectionKind kind, int n, const BigInt& r,
                                       std::span<const BigInt> x_samples) {
    if (n < 0) throw std::invalid_argument("verify_connection_identity: negative n");
    std::vector<BigInt> xs(x_samples.begin(), x_samples.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (static_cast<int>(xs.size()) < n + 1)
        throw std::invalid_argument("verify_connection_identity: need at least n+1 distinct sample points");

    const Triangle tri(kind == ConnectionKind::first ? TriangleKind::first_kind_r
                                                     : TriangleKind::second_kind_r,
                       n);
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row[static_cast<std::size_t>(k)] = tri.at(n, k).eval(r);

    for (const BigInt& x : xs) {
        if (kind == ConnectionKind::first) {
            BigInt lhs = 1;
            for (int i = 0; i < n; ++i) lhs *= x - BigInt(i) * i;
            BigInt rhs = 0;  // Horner in (x+r)
            for (int k = n; k >= 0; --k) rhs = rhs * (x + r) + row[static_cast<std::size_t>(k)];
            if (lhs != rhs) return false;
        } else {
            const BigInt lhs = int_pow(x + r, static_cast<unsigned>(n));
            BigInt rhs = 0;
            BigInt prefix = 1;  // prod_{i=0}^{k-1} (x - i^2)
            for (int k = 0; k <= n; ++k) {
                rhs += row[static_cast<std::size_t>(k)] * prefix;
                prefix *= x - BigInt(k) * k;
            }
            if (lhs != rhs) return false;
        }
    }
    return true;
}

// Row generating function of the first kind:
//   sum_{k=0}^{n} (-1)^k u_r(n,n-k) t^k = prod_{j=0}^{n-1} (1 + (j^2+r) t).
// Expands the product and compares all n+1 coefficients against row n.
inline bool ogf_first_kind_check(const Triangle& tri, int n, int order = 12) {
    if (!kind_is_first(tri.kind())) throw std::invalid_argument("ogf_first_kind_check: first-kind triangle required");
    if (order < n) throw std::invalid_argument("ogf_first_kind_check: order must be >= n");
    const PolyR r_part = kind_uses_r(tri.kind()) ? PolyR::variable() : PolyR{};
    std::vector<PolyR> coef(static_cast<std::size_t>(n) + 1);
    coef[0] = PolyR{1};
    for (int j = 0; j < n; ++j) {
        const PolyR w = PolyR{BigInt(j) * j} + r_part;
        for (int m = j + 1; m >= 1; --m) coef[static_cast<std::size_t>(m)] += w * coef[static_cast<std::size_t>(m - 1)];
    }
    for (int k = 0; k <= n; ++k) {
        PolyR expected = tri.at(n, n - k);
        if (k % 2 != 0) expected = -expected;
        if (coef[static_cast<std::size_t>(k)] != expected) return false;
    }
    return true;
}

// Column generating function of the second kind, truncated at t^order:
//   sum_{n>=k} U_r(n,k) t^n = t^k / prod_{j=0}^{k} (1 - (j^2+r) t).
// Returns the coefficients of t^0 .. t^order.
inline std::vector<PolyR> ogf_second_kind_series(int k, int order) {
    if (k < 0) throw std::invalid_argument("ogf_second_kind_series: negative k");
    if (order < k) throw std::invalid_argument("ogf_second_kind_series: order must be >= k");
    const PolyR r = PolyR::variable();
    const int m_max = order - k;
    std::vector<PolyR> c(static_cast<std::size_t>(m_max) + 1);
    c[0] = PolyR{1};
    for (int j = 0; j <= k; ++j) {
        const PolyR w = PolyR{BigInt(j) * j} + r;
        for (int m = 1; m <= m_max; ++m) c[static_cast<std::size_t>(m)] += w * c[static_cast<std::size_t>(m - 1)];
    }
    std::vector<PolyR> out(static_cast<std::size_t>(order) + 1);
    for (int m = k; m <= order; ++m) out[static_cast<std::size_t>(m)] = std::move(c[static_cast<std::size_t>(m - k)]);
    return out;
}

// Exponential generating function of the second kind, checked termwise at an
// integer r: n! [t^n] of the finite exponential sum reduces to the explicit
// formula, so each coefficient must match the recurrence value.
inline bool egf_second_kind_check(const Triangle& tri, int k, int n_max, const BigInt& r) {
    if (tri.kind() != TriangleKind::second_kind_r)
        throw std::invalid_argument("egf_second_kind_check: second-kind r-triangle required");
    if (k < 0 || n_max > tri.max_n()) throw std::invalid_argument("egf_second_kind_check: bad range");
    for (int n = k; n <= n_max; ++n)
        if (explicit_second_kind(n, k, r) != tri.at(n, k).eval(r)) return false;
    return true;
}

}  // namespace rcf
