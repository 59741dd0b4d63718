#include <rcf/distribution.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace rcf;

TEST_CASE("distribution construction", "[distribution]") {
    const PBDist d = build_dist(2, 0);
    CHECK(d.pmf == std::vector<BigRat>{BigRat(0), make_rat(1, 2), make_rat(1, 2)});
    CHECK(d.mean == make_rat(3, 2));
    CHECK(d.variance == make_rat(1, 4));
    CHECK(d.probs == std::vector<BigRat>{BigRat(1), make_rat(1, 2)});

    SECTION("single Bernoulli trial") {
        const PBDist one = build_dist(1, 3);
        CHECK(one.pmf == std::vector<BigRat>{make_rat(3, 4), make_rat(1, 4)});
        CHECK(one.probs == std::vector<BigRat>{make_rat(1, 4)});
    }

    SECTION("preconditions") {
        CHECK_THROWS_AS(build_dist(0, 0), std::invalid_argument);
        CHECK_THROWS_AS(build_dist(2, -1), std::invalid_argument);
    }

    SECTION("pmf is the normalized unsigned first-kind row") {
        for (int n = 1; n <= 8; ++n)
            for (long long r = 0; r <= 3; ++r) {
                const PBDist dist = build_dist(n, r);
                const std::vector<BigInt> row = unsigned_first_kind_row(n, r);
                BigInt norm = 1;
                for (int i = 0; i < n; ++i) norm *= 1 + r + BigInt(i) * i;
                for (int k = 0; k <= n; ++k)
                    CHECK(dist.pmf[static_cast<std::size_t>(k)] ==
                          make_rat(row[static_cast<std::size_t>(k)], norm));
            }
    }
}

TEST_CASE("moments", "[distribution]") {
    SECTION("pmf moments equal the closed forms") {
        const auto [mean2, var2] = moments_from_pmf(build_dist(2, 0));
        CHECK(mean2 == make_rat(3, 2));
        CHECK(var2 == make_rat(1, 4));

        const auto [mean1, var1] = moments_from_pmf(build_dist(1, 0));
        CHECK(mean1 == 1);  // p_0 = 1: certain success
        CHECK(var1 == 0);

        const auto [mean3, var3] = moments_from_pmf(build_dist(3, 1));
        CHECK(mean3 == 1);  // 1/2 + 1/3 + 1/6
        CHECK(var3 == build_dist(3, 1).variance);
    }

    SECTION("normalization and agreement over the verification range") {
        for (int n = 1; n <= 20; ++n)
            for (long long r = 0; r <= 5; ++r) {
                const PBDist d = build_dist(n, r);
                BigRat total;
                for (const BigRat& f : d.pmf) total += f;
                CHECK(total == 1);
                const auto [mean, variance] = moments_from_pmf(d);
                CHECK(mean == d.mean);
                CHECK(variance == d.variance);
            }
    }
}

TEST_CASE("probability generating function identity", "[distribution]") {
    for (int n = 1; n <= 12; ++n)
        for (long long r = 0; r <= 5; ++r) CHECK(pgf_product_check(build_dist(n, r)));
}

TEST_CASE("sampling", "[distribution]") {
    SECTION("certain success lands every sample on 1") {
        const std::vector<std::uint64_t> hist = sample(build_dist(1, 0), 100, 7);
        CHECK(hist == std::vector<std::uint64_t>{0, 100});
    }

    SECTION("seeded runs are reproducible and inside the 4-sigma band") {
        const PBDist d = build_dist(2, 0);
        const std::uint64_t count = 100000;
        const std::vector<std::uint64_t> hist = sample(d, count, 42);
        CHECK(hist == sample(d, count, 42));

        BigInt weighted = 0;
        std::uint64_t total = 0;
        for (int k = 0; k <= d.n; ++k) {
            weighted += BigInt(k) * hist[static_cast<std::size_t>(k)];
            total += hist[static_cast<std::size_t>(k)];
        }
        CHECK(total == count);
        const BigRat empirical = make_rat(weighted, count);
        const BigRat deviation = empirical - d.mean;
        CHECK(deviation * deviation <= BigRat(16) * d.variance / BigRat(count));
    }

    SECTION("distinct seeds give distinct streams") {
        const PBDist d = build_dist(5, 1);
        CHECK(sample(d, 1000, 1) != sample(d, 1000, 2));
    }

    CHECK_THROWS_AS(sample(build_dist(2, 0), 0, 1), std::invalid_argument);
}

TEST_CASE("log-concavity certification", "[distribution]") {
    SECTION("small literal sequences") {
        const std::vector<BigInt> peak{1, 2, 1};
        const LogConcavityResult ok = check_log_concavity(peak, true);
        CHECK(ok.holds);
        CHECK(!ok.violation);

        const std::vector<BigInt> bad{1, 1, 2};
        const LogConcavityResult violated = check_log_concavity(bad, true);
        CHECK(!violated.holds);
        CHECK(violated.violation == 1);

        // [1,1,2] is not even weakly log-concave; [1,1,1] is weakly but not strictly
        CHECK(!check_log_concavity(bad, false).holds);
        const std::vector<BigInt> flat{1, 1, 1};
        CHECK(check_log_concavity(flat, false).holds);
        CHECK(!check_log_concavity(flat, true).holds);
    }

    SECTION("nonpositive entries are rejected with their index") {
        const std::vector<BigInt> zeros{1, 0, 1};
        CHECK_THROWS_AS(check_log_concavity(zeros, true), std::domain_error);
        try {
            check_log_concavity(zeros, true);
        } catch (const std::domain_error& e) {
            CHECK(std::string(e.what()).find("index 1") != std::string::npos);
        }
    }

    SECTION("unsigned first-kind rows are strictly log-concave") {
        const Triangle tri(TriangleKind::first_kind_r, 30);
        const std::vector<BigInt> row6 = unsigned_first_kind_row(tri, 6, 1);
        CHECK(check_log_concavity(row6, true).holds);
        for (int n = 2; n <= 30; ++n)
            for (long long r = 0; r <= 5; ++r) {
                const std::vector<BigInt> row = unsigned_first_kind_row(tri, n, r);
                const std::size_t start = r == 0 ? 1 : 0;  // |u_0(n,0)| = 0
                const std::span<const BigInt> window(row.data() + start, row.size() - start);
                CHECK(check_log_concavity(window, true).holds);
            }
    }
}

TEST_CASE("Newton's inequality", "[distribution]") {
    CHECK(check_newton_inequality(4, 1));
    CHECK(check_newton_inequality(2, 0));  // boundary: k=1 compares against a zero product
    CHECK(check_newton_inequality(3, 5));
    CHECK_THROWS_AS(check_newton_inequality(1, 0), std::invalid_argument);

    SECTION("whole verification range") {
        const Triangle tri(TriangleKind::first_kind_r, 30);
        for (int n = 2; n <= 30; ++n)
            for (long long r = 0; r <= 5; ++r) CHECK(check_newton_inequality(tri, n, r));
    }
}
