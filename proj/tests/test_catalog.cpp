#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "starcache/catalog.hpp"

using namespace starcache;

TEST_CASE("zipf pmf sums to one and is rank ordered") {
    for (int F : {2, 50, 1000}) {
        for (double alpha : {0.0, 0.8, 2.0}) {
            const std::vector<double> p = zipf_pmf(F, alpha);
            REQUIRE(static_cast<int>(p.size()) == F);
            const double sum = std::accumulate(p.begin(), p.end(), 0.0);
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            for (size_t i = 1; i < p.size(); ++i) CHECK(p[i] <= p[i - 1] + 1e-15);
        }
    }
}

TEST_CASE("zipf pmf matches the rank law directly") {
    const std::vector<double> p = zipf_pmf(4, 1.0);
    const double denom = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4;
    CHECK(p[0] == doctest::Approx(1.0 / denom).epsilon(1e-12));
    CHECK(p[3] == doctest::Approx(0.25 / denom).epsilon(1e-12));
    CHECK_THROWS_AS(zipf_pmf(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(zipf_pmf(5, -0.1), std::invalid_argument);
}

TEST_CASE("alpha 0 is uniform") {
    const std::vector<double> p = zipf_pmf(8, 0.0);
    for (double v : p) CHECK(v == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("sampler frequencies track the pmf within 3 sigma") {
    const Catalog cat = make_catalog(10, 0.8);
    Rng rng(123);
    const int n = 100000;
    std::vector<int> counts(cat.num_contents, 0);
    for (int i = 0; i < n; ++i) {
        const int f = sample_content(cat, rng);
        REQUIRE(f >= 1);
        REQUIRE(f <= cat.num_contents);
        ++counts[f - 1];
    }
    for (int f = 0; f < cat.num_contents; ++f) {
        const double expect = n * cat.pmf[f];
        const double sigma = std::sqrt(n * cat.pmf[f] * (1.0 - cat.pmf[f]));
        CHECK(std::abs(counts[f] - expect) <= 3.0 * sigma);
    }
}

TEST_CASE("request pair draws two independent contents") {
    const Catalog cat = make_catalog(6, 1.2);
    Rng rng(5);
    int distinct = 0;
    for (int i = 0; i < 2000; ++i) {
        const RequestPair req = sample_request_pair(cat, rng);
        CHECK(req.t >= 1);
        CHECK(req.t <= 6);
        CHECK(req.r >= 1);
        CHECK(req.r <= 6);
        distinct += (req.t != req.r);
    }
    CHECK(distinct > 0);
}

TEST_CASE("cache update replaces contents and counts the L1 distance") {
    CacheState c = make_cache(Node::BS, 3, 10);
    CHECK(c.ones() == 0);

    CacheUpdate u1 = apply_cache_decision(c, {1, 5, 7});
    CHECK(u1.state.ones() == 3);
    CHECK(u1.replaced == 3);  // three insertions into an empty cache
    CHECK(u1.state.holds(5));
    CHECK_FALSE(u1.state.holds(2));

    // one swap: 7 out, 9 in
    CacheUpdate u2 = apply_cache_decision(u1.state, {1, 5, 9});
    CHECK(u2.replaced == 2);
    CHECK(u2.state.holds(9));
    CHECK_FALSE(u2.state.holds(7));

    // identical target is free
    CacheUpdate u3 = apply_cache_decision(u2.state, {9, 1, 5});
    CHECK(u3.replaced == 0);

    // duplicates collapse instead of inflating the fill
    CacheUpdate u4 = apply_cache_decision(u3.state, {2, 2, 2});
    CHECK(u4.state.ones() == 1);
    CHECK(u4.state.contents() == std::vector<int>{2});

    const std::vector<int> below{0}, beyond{11}, overfull{1, 2, 3, 4};
    CHECK_THROWS_AS(apply_cache_decision(c, below), std::invalid_argument);
    CHECK_THROWS_AS(apply_cache_decision(c, beyond), std::invalid_argument);
    CHECK_THROWS_AS(apply_cache_decision(c, overfull), std::invalid_argument);
}

TEST_CASE("serving prefers the STARS cache and counts misses as remote") {
    CacheState bs = apply_cache_decision(make_cache(Node::BS, 3, 10), {1, 2, 3}).state;
    CacheState st = apply_cache_decision(make_cache(Node::STARS, 2, 10), {2, 4}).state;

    // content 2 is in both caches; STARS wins
    ServingDecision both = lookup_serving({2, 4}, bs, st);
    CHECK(both.tier_t == ServeTier::STARS);
    CHECK(both.tier_r == ServeTier::STARS);
    CHECK(both.hits_stars == 2);
    CHECK(both.hits_bs == 0);
    CHECK(both.remote_count == 0);

    ServingDecision split = lookup_serving({1, 9}, bs, st);
    CHECK(split.tier_t == ServeTier::BS);
    CHECK(split.tier_r == ServeTier::REMOTE);
    CHECK(split.hits_bs == 1);
    CHECK(split.remote_count == 1);

    ServingDecision none = lookup_serving({8, 9}, bs, st);
    CHECK(none.remote_count == 2);
    CHECK(none.hits_bs + none.hits_stars == 0);
}
