#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "starcache/rng.hpp"

using namespace starcache;

TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
    CHECK(same == 0);
}

TEST_CASE("uniform lands in [0, 1)") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("normal has roughly standard moments") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("uniform_index stays in range and covers it") {
    Rng rng(3);
    std::set<uint64_t> seen;
    for (int i = 0; i < 5000; ++i) {
        const uint64_t k = rng.uniform_index(13);
        CHECK(k < 13);
        seen.insert(k);
    }
    CHECK(seen.size() == 13);
}

TEST_CASE("forked streams are independent of the parent draw order") {
    Rng a(99);
    Rng child_before = a.fork(5);
    a.next_u64();
    a.next_u64();
    Rng b(99);
    Rng child_after = b.fork(5);
    for (int i = 0; i < 100; ++i)
        CHECK(child_before.next_u64() == child_after.next_u64());

    // distinct stream ids give distinct streams
    Rng c(99);
    Rng other = c.fork(6);
    Rng base = Rng(99).fork(5);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (base.next_u64() == other.next_u64());
    CHECK(same == 0);
}
