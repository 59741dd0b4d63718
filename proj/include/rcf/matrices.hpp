#pragma once

// The r-central factorial matrices U1(n) = [u_r(i,j)], U2(n) = [U_r(i,j)],
// their r = 0 specializations A1(n), A2(n), the generalized Pascal matrix
// P_n[z] = [C(i,j) z^{i-j}], and the inverse/factorization identities
// U1 U2 = I, U1 = A1 P[-r], U2 = P[r] A2.

#include <rcf/algebra.hpp>
#include <rcf/triangles.hpp>

#include <span>
#include <stdexcept>
#include <vector>

namespace rcf {

/// Dense n x n matrix over PolyR. All builders here produce unit
/// lower-triangular matrices.
class SquareMatrix {
public:
    explicit SquareMatrix(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("SquareMatrix: need dim >= 1");
        cells_.resize(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    }

    static SquareMatrix identity(int dim) {
        SquareMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = PolyR{1};
        return m;
    }

    int dim() const { return dim_; }

    PolyR& at(int i, int j) {
        check(i, j);
        return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)];
    }

    const PolyR& at(int i, int j) const {
        check(i, j);
        return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)];
    }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) = default;

private:
    void check(int i, int j) const {
        if (i < 0 || i >= dim_ || j < 0 || j >= dim_) throw std::out_of_range("SquareMatrix: index out of range");
    }

    int dim_;
    std::vector<PolyR> cells_;
};

namespace detail {

inline SquareMatrix from_triangle(TriangleKind kind, int n) {
    const Triangle tri(kind, n - 1);
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m.at(i, j) = tri.at(i, j);
    return m;
}

}  // namespace detail

inline SquareMatrix build_U1(int n) { return detail::from_triangle(TriangleKind::first_kind_r, n); }
inline SquareMatrix build_U2(int n) { return detail::from_triangle(TriangleKind::second_kind_r, n); }
inline SquareMatrix build_A1(int n) { return detail::from_triangle(TriangleKind::first_kind, n); }
inline SquareMatrix build_A2(int n) { return detail::from_triangle(TriangleKind::second_kind, n); }

// P_n[z] with entries C(i,j) z^{i-j}; P_n[0] is the identity.
inline SquareMatrix build_pascal(int n, const PolyR& z) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        PolyR power{1};
        for (int d = 0; d <= i; ++d) {  // d = i - j, walking up the row from the diagonal
            m.at(i, i - d) = binomial(i, i - d) * power;
            power *= z;
        }
    }
    return m;
}

inline SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("mat_mul: dimension mismatch");
    const int n = a.dim();
    SquareMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const PolyR& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const PolyR& bkj = b.at(k, j);
                if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

inline std::vector<PolyR> mat_vec(const SquareMatrix& a, std::span<const PolyR> v) {
    if (static_cast<int>(v.size()) != a.dim()) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<PolyR> out(v.size());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out[static_cast<std::size_t>(i)] += a.at(i, j) * v[static_cast<std::size_t>(j)];
    return out;
}

inline bool mat_is_identity(const SquareMatrix& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j) != (i == j ? PolyR{1} : PolyR{})) return false;
    return true;
}

// U1(n) U2(n) = U2(n) U1(n) = I, as matrices over the polynomial ring.
inline bool verify_orthogonality(int n) {
    const SquareMatrix u1 = build_U1(n);
    const SquareMatrix u2 = build_U2(n);
    return mat_is_identity(mat_mul(u1, u2)) && mat_is_identity(mat_mul(u2, u1));
}

// U1(n) = A1(n) P_n[-r] and U2(n) = P_n[r] A2(n).
inline bool verify_factorizations(int n) {
    const PolyR r = PolyR::variable();
    const bool first = build_U1(n) == mat_mul(build_A1(n), build_pascal(n, -r));
    const bool second = build_U2(n) == mat_mul(build_pascal(n, r), build_A2(n));
    return first && second;
}

}  // namespace rcf
