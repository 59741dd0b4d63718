#pragma once

#include <rcf/algebra.hpp>

#include <random>
#include <vector>

namespace rcf::testing {

inline BigInt random_int(std::mt19937_64& gen, long long lo, long long hi) {
    const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
    return BigInt(lo + static_cast<long long>(gen() % span));
}

inline PolyR random_poly(std::mt19937_64& gen, int max_degree, long long coeff_bound) {
    const int degree = static_cast<int>(gen() % static_cast<unsigned>(max_degree + 1));
    std::vector<BigInt> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) coeffs.push_back(random_int(gen, -coeff_bound, coeff_bound));
    return PolyR(std::move(coeffs));
}

}  // namespace rcf::testing
