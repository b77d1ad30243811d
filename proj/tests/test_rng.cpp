#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "clude/errors.hpp"
#include "clude/rng.hpp"

using namespace clude;

TEST_SUITE("rng") {

TEST_CASE("same seed reproduces the stream bit for bit") {
    RngStream a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
        CHECK(a.uniform() == b.uniform());
    }
}

TEST_CASE("uniform stays in [0, 1)") {
    RngStream rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int covers the full range without bias artifacts") {
    RngStream rng(99);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 50000; ++i)
        hits[rng.index(5)] += 1;
    for (const int h : hits) {
        CHECK(h > 9000); // expectation 10000
        CHECK(h < 11000);
    }
    CHECK_THROWS_AS(rng.uniform_int(0), ConfigError);
}

TEST_CASE("distinct_indices yields distinct values that honor the exclusion") {
    RngStream rng(3);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t exclude = rng.index(10);
        const auto picked = rng.distinct_indices(3, 10, exclude);
        REQUIRE(picked.size() == 3);
        const std::set<std::size_t> unique(picked.begin(), picked.end());
        CHECK(unique.size() == 3);
        CHECK(unique.count(exclude) == 0);
        for (const std::size_t v : picked)
            CHECK(v < 10);
    }
}

TEST_CASE("distinct_indices rejects requests larger than the pool") {
    RngStream rng(5);
    CHECK_THROWS_AS(rng.distinct_indices(4, 4, 0), ConfigError);
    CHECK(rng.distinct_indices(4, 4).size() == 4);
}

TEST_CASE("normal has roughly standard moments") {
    RngStream rng(11);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("mix_seed separates nearby inputs and is order sensitive") {
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(5, "de") != mix_seed(5, "clu_de"));
    CHECK(mix_seed(5, "de") == mix_seed(5, "de"));
}

} // TEST_SUITE
