#include <rcf/matrices.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

#include <array>

using namespace rcf;

namespace {

SquareMatrix from_rows(const std::vector<std::vector<const char*>>& rows) {
    SquareMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) m.at(i, j) = poly_parse(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
}

}  // namespace

TEST_CASE("published 5x5 matrices", "[matrices]") {
    const SquareMatrix u1_expected = from_rows({
        {"1", "0", "0", "0", "0"},
        {"-r", "1", "0", "0", "0"},
        {"r^2+r", "-2*r-1", "1", "0", "0"},
        {"-r^3-5*r^2-4*r", "3*r^2+10*r+4", "-3*r-5", "1", "0"},
        {"r^4+14*r^3+49*r^2+36*r", "-4*r^3-42*r^2-98*r-36", "6*r^2+42*r+49", "-4*r-14", "1"},
    });
    const SquareMatrix u2_expected = from_rows({
        {"1", "0", "0", "0", "0"},
        {"r", "1", "0", "0", "0"},
        {"r^2", "2*r+1", "1", "0", "0"},
        {"r^3", "3*r^2+3*r+1", "3*r+5", "1", "0"},
        {"r^4", "4*r^3+6*r^2+4*r+1", "6*r^2+20*r+21", "4*r+14", "1"},
    });
    CHECK(build_U1(5) == u1_expected);
    CHECK(build_U2(5) == u2_expected);

    const SquareMatrix a1_expected = from_rows({
        {"1", "0", "0", "0", "0"},
        {"0", "1", "0", "0", "0"},
        {"0", "-1", "1", "0", "0"},
        {"0", "4", "-5", "1", "0"},
        {"0", "-36", "49", "-14", "1"},
    });
    const SquareMatrix a2_expected = from_rows({
        {"1", "0", "0", "0", "0"},
        {"0", "1", "0", "0", "0"},
        {"0", "1", "1", "0", "0"},
        {"0", "1", "5", "1", "0"},
        {"0", "1", "21", "14", "1"},
    });
    CHECK(build_A1(5) == a1_expected);
    CHECK(build_A2(5) == a2_expected);

    CHECK(build_A1(1) == SquareMatrix::identity(1));
}

TEST_CASE("generalized Pascal matrix", "[matrices]") {
    const SquareMatrix p5 = build_pascal(5, PolyR::variable());
    const std::array<const char*, 5> row4{"r^4", "4*r^3", "6*r^2", "4*r", "1"};
    for (int j = 0; j < 5; ++j) CHECK(p5.at(4, j) == poly_parse(row4[static_cast<std::size_t>(j)]));

    CHECK(mat_is_identity(build_pascal(6, PolyR{})));
    CHECK(build_pascal(3, -PolyR::variable()).at(2, 1) == poly_parse("-2*r"));
    CHECK_THROWS_AS(build_pascal(0, PolyR{1}), std::invalid_argument);

    SECTION("inverse and translation") {
        const PolyR r = PolyR::variable();
        for (int n = 1; n <= 10; ++n)
            CHECK(mat_is_identity(mat_mul(build_pascal(n, r), build_pascal(n, -r))));

        std::mt19937_64 gen(21);
        for (int trial = 0; trial < 10; ++trial) {
            const PolyR y{testing::random_int(gen, -9, 9)};
            const PolyR z{testing::random_int(gen, -9, 9)};
            CHECK(mat_mul(build_pascal(6, y), build_pascal(6, z)) == build_pascal(6, y + z));
        }
        // also holds with polynomial arguments
        CHECK(mat_mul(build_pascal(5, r), build_pascal(5, r + PolyR{3})) ==
              build_pascal(5, poly_parse("2*r+3")));
    }
}

TEST_CASE("matrix multiplication basics", "[matrices]") {
    const SquareMatrix u1 = build_U1(5);
    CHECK(mat_mul(u1, SquareMatrix::identity(5)) == u1);
    CHECK(mat_is_identity(mat_mul(build_U1(5), build_U2(5))));
    CHECK_THROWS_AS(mat_mul(build_U1(3), build_U2(4)), std::invalid_argument);
    CHECK_THROWS_AS(u1.at(5, 0), std::out_of_range);
}

TEST_CASE("orthogonality", "[matrices]") {
    CHECK(verify_orthogonality(1));
    CHECK(verify_orthogonality(5));
    CHECK(verify_orthogonality(10));
    for (int n = 1; n <= 12; ++n) CHECK(verify_orthogonality(n));
}

TEST_CASE("factorizations through the Pascal matrix", "[matrices]") {
    CHECK(verify_factorizations(1));
    CHECK(verify_factorizations(5));
    CHECK(verify_factorizations(8));
    for (int n = 1; n <= 10; ++n) CHECK(verify_factorizations(n));

    SECTION("the two displayed n=5 products") {
        const PolyR r = PolyR::variable();
        CHECK(build_U1(5) == mat_mul(build_A1(5), build_pascal(5, -r)));
        CHECK(build_U2(5) == mat_mul(build_pascal(5, r), build_A2(5)));
    }
}

TEST_CASE("built matrices are unit lower-triangular", "[matrices]") {
    for (int n : {1, 4, 9}) {
        for (const SquareMatrix& m :
             {build_U1(n), build_U2(n), build_A1(n), build_A2(n), build_pascal(n, PolyR::variable())}) {
            for (int i = 0; i < n; ++i) {
                CHECK(m.at(i, i) == PolyR{1});
                for (int j = i + 1; j < n; ++j) CHECK(m.at(i, j).is_zero());
            }
        }
    }
}

TEST_CASE("inverse relations recover sequences", "[matrices]") {
    std::mt19937_64 gen(22);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 1 + static_cast<int>(gen() % 10);
        const SquareMatrix u1 = build_U1(dim);
        const SquareMatrix u2 = build_U2(dim);
        std::vector<PolyR> b;
        for (int i = 0; i < dim; ++i) b.emplace_back(testing::random_int(gen, -99, 99));
        const std::vector<PolyR> a = mat_vec(u2, b);
        CHECK(mat_vec(u1, a) == b);
    }
}
