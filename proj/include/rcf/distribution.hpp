#pragma once

// The Poisson-binomial distribution attached to the unsigned first-kind
// array: P(Y_n = k) = |u_r(n,k)| / prod_{i<n} (1+r+i^2), equivalently the
// law of a sum of independent Bernoulli(1/(1+r+i^2)) trials. Everything is
// exact rational; the only randomness is the explicitly seeded sampler.

#include <rcf/algebra.hpp>
#include <rcf/triangles.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcf {

// Row |u_r(n, 0..n)| evaluated at an integer r >= 0, from a first-kind
// r-triangle with max_n >= n.
inline std::vector<BigInt> unsigned_first_kind_row(const Triangle& tri, int n, const BigInt& r) {
    if (tri.kind() != TriangleKind::first_kind_r)
        throw std::invalid_argument("unsigned_first_kind_row: first-kind r-triangle required");
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        BigInt v = tri.at(n, k).eval(r);
        if ((n - k) % 2 != 0) v = -v;
        row[static_cast<std::size_t>(k)] = std::move(v);
    }
    return row;
}

inline std::vector<BigInt> unsigned_first_kind_row(int n, const BigInt& r) {
    return unsigned_first_kind_row(Triangle(TriangleKind::first_kind_r, n), n, r);
}

struct PBDist {
    int n = 0;
    BigInt r;
    std::vector<BigRat> probs;  // p_i = 1/(1+r+i^2), i = 0..n-1
    std::vector<BigRat> pmf;    // f_n(0..n)
    BigRat mean;                // sum p_i
    BigRat variance;            // sum p_i (1 - p_i)
};

inline PBDist build_dist(int n, const BigInt& r) {
    if (n < 1) throw std::invalid_argument("build_dist: need n >= 1");
    if (r < 0) throw std::invalid_argument("build_dist: need r >= 0");

    PBDist d;
    d.n = n;
    d.r = r;

    BigInt normalizer = 1;
    for (int i = 0; i < n; ++i) {
        const BigInt m = 1 + r + BigInt(i) * i;
        normalizer *= m;
        const BigRat p = make_rat(1, m);
        d.probs.push_back(p);
        d.mean += p;
        d.variance += p * (BigRat(1) - p);
    }

    const Triangle tri(TriangleKind::first_kind_r, n);
    for (const BigInt& w : unsigned_first_kind_row(tri, n, r)) d.pmf.push_back(make_rat(w, normalizer));
    return d;
}

// Mean and variance recomputed from the pmf; must equal the closed forms.
inline std::pair<BigRat, BigRat> moments_from_pmf(const PBDist& d) {
    BigRat mean, second;
    for (int k = 0; k <= d.n; ++k) {
        const BigRat& f = d.pmf[static_cast<std::size_t>(k)];
        mean += BigRat(k) * f;
        second += BigRat(BigInt(k) * k) * f;
    }
    return {mean, second - mean * mean};
}

namespace detail {

// Uniform draw in [0, m) by masked rejection on the mt19937_64 stream; keeps
// the sampler's output a pure function of the seed across platforms.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t m) {
    const std::uint64_t threshold = (0 - m) % m;  // 2^64 mod m
    for (;;) {
        const std::uint64_t x = gen();
        if (x >= threshold) return x % m;
    }
}

}  // namespace detail

// Draws `count` samples of Y_n = sum X_i, X_i ~ Bernoulli(1/(1+r+i^2)), and
// returns the histogram over {0..n}. Each Bernoulli is exact: success iff a
// uniform draw from {0..r+i^2} lands on 0. Deterministic for a given seed.
inline std::vector<std::uint64_t> sample(const PBDist& d, std::uint64_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample: need count >= 1");
    std::vector<std::uint64_t> denominators;
    denominators.reserve(static_cast<std::size_t>(d.n));
    for (int i = 0; i < d.n; ++i) {
        const BigInt m = 1 + d.r + BigInt(i) * i;
        if (m > BigInt(~std::uint64_t{0})) throw std::overflow_error("sample: 1+r+i^2 exceeds 64 bits");
        denominators.push_back(static_cast<std::uint64_t>(m));
    }
    std::mt19937_64 gen(seed);
    std::vector<std::uint64_t> histogram(static_cast<std::size_t>(d.n) + 1, 0);
    for (std::uint64_t s = 0; s < count; ++s) {
        int k = 0;
        for (const std::uint64_t m : denominators)
            if (detail::uniform_below(gen, m) == 0) ++k;
        ++histogram[static_cast<std::size_t>(k)];
    }
    return histogram;
}

struct LogConcavityResult {
    bool holds = false;
    std::optional<std::size_t> violation;  // first violating interior index
};

// Checks c_k^2 > c_{k+1} c_{k-1} (or >= when strict is false) over the given
// window. Every entry must be positive; a nonpositive entry is rejected with
// its index.
inline LogConcavityResult check_log_concavity(std::span<const BigInt> seq, bool strict = true) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i] <= 0)
            throw std::domain_error("check_log_concavity: nonpositive entry at index " + std::to_string(i));
    for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
        const BigInt lhs = seq[k] * seq[k];
        const BigInt rhs = seq[k + 1] * seq[k - 1];
        if (strict ? !(lhs > rhs) : !(lhs >= rhs)) return {false, k};
    }
    return {true, std::nullopt};
}

// Newton's inequality for the row |u_r(n,.)|:
//   |u|(n,k)^2 >= ((k+1)/k)((n-k+1)/(n-k)) |u|(n,k-1) |u|(n,k+1), k = 1..n-1,
// compared exactly by cross-multiplication.
inline bool check_newton_inequality(const Triangle& tri, int n, const BigInt& r) {
    if (n < 2) throw std::invalid_argument("check_newton_inequality: need n >= 2");
    const std::vector<BigInt> row = unsigned_first_kind_row(tri, n, r);
    for (int k = 1; k < n; ++k) {
        const BigInt lhs = BigInt(k) * (n - k) * row[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(k)];
        const BigInt rhs = BigInt(k + 1) * (n - k + 1) * row[static_cast<std::size_t>(k - 1)] *
                           row[static_cast<std::size_t>(k + 1)];
        if (lhs < rhs) return false;
    }
    return true;
}

inline bool check_newton_inequality(int n, const BigInt& r) {
    if (n < 2) throw std::invalid_argument("check_newton_inequality: need n >= 2");
    return check_newton_inequality(Triangle(TriangleKind::first_kind_r, n), n, r);
}

// Probability generating function identity, as polynomials in s:
//   sum_k f_n(k) s^k = prod_{i=0}^{n-1} (1 - p_i + p_i s).
inline bool pgf_product_check(const PBDist& d) {
    std::vector<BigRat> rhs{BigRat(1)};
    for (const BigRat& p : d.probs) {
        std::vector<BigRat> next(rhs.size() + 1);
        for (std::size_t m = 0; m < rhs.size(); ++m) {
            next[m] += (BigRat(1) - p) * rhs[m];
            next[m + 1] += p * rhs[m];
        }
        rhs = std::move(next);
    }
    return rhs == d.pmf;
}

}  // namespace rcf
