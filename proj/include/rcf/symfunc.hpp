#pragma once

// Elementary and complete homogeneous symmetric functions over lists of
// PolyR values, the rectangle forms tying them to the triangular arrays, and
// Merca's square and shift identities.

#include <rcf/algebra.hpp>
#include <rcf/triangles.hpp>

#include <span>
#include <stdexcept>
#include <vector>

namespace rcf {

// Variables z_1..z_n after substitution; an empty list is allowed.
using SymInput = std::vector<PolyR>;

// sigma_k: sum of products over strictly increasing k-subsets. Computed by
// the generating product prod (1 + z_i t), one variable at a time.
// Returns 0 for k < 0 or k > n, 1 for k = 0.
inline PolyR elementary(int k, std::span<const PolyR> zs) {
    const int n = static_cast<int>(zs.size());
    if (k < 0 || k > n) return PolyR{};
    std::vector<PolyR> e(static_cast<std::size_t>(k) + 1);
    e[0] = PolyR{1};
    int seen = 0;
    for (const PolyR& z : zs) {
        ++seen;
        for (int j = std::min(seen, k); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += z * e[static_cast<std::size_t>(j - 1)];
    }
    return e[static_cast<std::size_t>(k)];
}

// h_k: sum of products over weakly increasing k-multisets, via the truncated
// series of prod (1 - z_i t)^{-1}. Defined (and generally nonzero) for every
// k >= 0, including k > n; returns 0 for k < 0.
inline PolyR homogeneous(int k, std::span<const PolyR> zs) {
    if (k < 0) return PolyR{};
    std::vector<PolyR> c(static_cast<std::size_t>(k) + 1);
    c[0] = PolyR{1};
    for (const PolyR& z : zs)
        for (int m = 1; m <= k; ++m)
            c[static_cast<std::size_t>(m)] += z * c[static_cast<std::size_t>(m - 1)];
    return c[static_cast<std::size_t>(k)];
}

// The shifted-squares variable list r, 1^2+r, ..., (m-1)^2+r.
inline SymInput shifted_squares(int count) {
    SymInput zs;
    zs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) zs.push_back(PolyR{BigInt(i) * i} + PolyR::variable());
    return zs;
}

// u_r(n,n-k) = (-1)^k sigma_k(r, 1^2+r, ..., (n-1)^2+r).
inline PolyR triangle_as_sigma(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("triangle_as_sigma: need 0 <= k <= n");
    const PolyR s = elementary(k, shifted_squares(n));
    return k % 2 == 0 ? s : -s;
}

// U_r(n+k,n) = h_k(r, 1^2+r, ..., n^2+r).
inline PolyR triangle_as_h(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("triangle_as_h: need n, k >= 0");
    return homogeneous(k, shifted_squares(n + 1));
}

// sigma_i(z_1^2,...,z_n^2) = sum_{j=-i}^{i} (-1)^j sigma_{i+j}(z) sigma_{i-j}(z).
inline bool merca_square_identity_check(int i, std::span<const PolyR> zs) {
    SymInput squares;
    squares.reserve(zs.size());
    for (const PolyR& z : zs) squares.push_back(z * z);
    const PolyR lhs = elementary(i, squares);
    PolyR rhs;
    for (int j = -i; j <= i; ++j) {
        const PolyR prod = elementary(i + j, zs) * elementary(i - j, zs);
        rhs += (j % 2 == 0 ? prod : -prod);
    }
    return lhs == rhs;
}

enum class SymKind { sigma, h };

// Merca's shift theorem: g_k(z_1+t,...,z_n+t) = sum_{i=0}^{k} C(n-c_i,k-i) g_i(z) t^{k-i},
// with c_i = i when g = sigma and c_i = 1-k when g = h. The shift t is
// substituted as a polynomial and equality is checked in the ring.
inline bool merca_shift_identity_check(SymKind which, int k, const PolyR& shift,
                                       std::span<const PolyR> zs) {
    const int n = static_cast<int>(zs.size());
    if (k < 0) throw std::invalid_argument("merca_shift_identity_check: negative k");
    if (which == SymKind::sigma && k > n)
        throw std::invalid_argument("merca_shift_identity_check: sigma needs k <= n");
    if (k == 0) return true;  // g_0 = 1 on both sides by convention

    SymInput shifted;
    shifted.reserve(zs.size());
    for (const PolyR& z : zs) shifted.push_back(z + shift);

    auto g = [&](int i, std::span<const PolyR> vars) {
        return which == SymKind::sigma ? elementary(i, vars) : homogeneous(i, vars);
    };

    const PolyR lhs = g(k, shifted);
    PolyR rhs;
    for (int i = 0; i <= k; ++i) {
        const BigInt c_i = which == SymKind::sigma ? BigInt(i) : BigInt(1 - k);
        const BigInt coeff = binomial(BigInt(n) - c_i, BigInt(k - i));
        rhs += coeff * g(i, zs) * poly_pow(shift, static_cast<unsigned>(k - i));
    }
    return lhs == rhs;
}

}  // namespace rcf
