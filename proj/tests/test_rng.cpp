#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "passopt/rng.hpp"

using passopt::Rng;

TEST_CASE("identical seeds replay the identical sequence") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("child streams are unaffected by parent draws") {
    Rng fresh(7);
    Rng drained(7);
    for (int i = 0; i < 100; ++i) drained.next_u64();

    Rng child_a = fresh.stream(3);
    Rng child_b = drained.stream(3);
    for (int i = 0; i < 100; ++i) CHECK(child_a.next_u64() == child_b.next_u64());
}

TEST_CASE("distinct stream tags give distinct sequences") {
    Rng root(11);
    Rng s1 = root.stream(1);
    Rng s2 = root.stream(2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (s1.next_u64() == s2.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("uniform_int stays in range and is roughly uniform") {
    Rng rng(5);
    std::map<std::int64_t, long long> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        const auto v = rng.uniform_int(1, 6);
        REQUIRE(v >= 1);
        REQUIRE(v <= 6);
        ++counts[v];
    }
    CHECK(counts.size() == 6);
    for (const auto& [value, count] : counts) {
        CHECK(count > 10000 - 500);
        CHECK(count < 10000 + 500);
    }
    CHECK(rng.uniform_int(4, 4) == 4);
    CHECK_THROWS_AS((void)rng.uniform_int(3, 2), std::invalid_argument);
}

TEST_CASE("uniform_real covers [lo, hi) with the right mean") {
    Rng rng(9);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const double v = rng.uniform_real(2.0, 4.0);
        REQUIRE(v >= 2.0);
        REQUIRE(v < 4.0);
        sum += v;
    }
    CHECK(sum / draws == doctest::Approx(3.0).epsilon(0.01));
    CHECK(rng.uniform_real(1.5, 1.5) == 1.5);
}

TEST_CASE("normal matches the requested moments") {
    Rng rng(13);
    const int draws = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = rng.normal(2.0, 3.0);
        sum += v;
        sq += v * v;
    }
    const double mean = sum / draws;
    const double var = sq / draws - mean * mean;
    CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
    CHECK(std::sqrt(var) == doctest::Approx(3.0).epsilon(0.02));
    CHECK_THROWS_AS((void)rng.normal(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("shuffle permutes and hits every arrangement of three items") {
    Rng rng(17);
    std::map<std::vector<int>, long long> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        std::vector<int> v = {0, 1, 2};
        rng.shuffle(v);
        std::vector<int> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(sorted == std::vector<int>({0, 1, 2}));
        ++counts[v];
    }
    CHECK(counts.size() == 6);
    for (const auto& [perm, count] : counts) {
        CHECK(count > 10000 - 500);
        CHECK(count < 10000 + 500);
    }
}

TEST_CASE("sample draws distinct elements uniformly") {
    Rng rng(23);
    const std::vector<int> pool = {0, 1, 2, 3, 4};
    std::vector<long long> hits(pool.size(), 0);
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        const auto picked = rng.sample(pool, 2);
        REQUIRE(picked.size() == 2);
        REQUIRE(picked[0] != picked[1]);
        for (int v : picked) ++hits[static_cast<std::size_t>(v)];
    }
    // each element is included with probability 2/5
    for (long long h : hits) {
        CHECK(h > draws * 2 / 5 - 600);
        CHECK(h < draws * 2 / 5 + 600);
    }
    CHECK_THROWS_AS((void)rng.sample(pool, 6), std::invalid_argument);
}

TEST_CASE("derive_seed separates tags") {
    const std::uint64_t base = 99;
    CHECK(passopt::derive_seed(base, 1) != passopt::derive_seed(base, 2));
    CHECK(passopt::derive_seed(base, 1) == passopt::derive_seed(base, 1));
    CHECK(passopt::derive_seed(base, 0) != base);
}
