#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "starcache/channel.hpp"

using namespace starcache;

TEST_CASE("mean_link_gain follows the path loss law") {
    FadingParams p;
    p.rho0 = 1e-3;
    p.exponent = 2.0;
    CHECK(mean_link_gain(1.0, p) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(mean_link_gain(10.0, p) == doctest::Approx(1e-5).epsilon(1e-12));
    p.exponent = 3.0;
    CHECK(mean_link_gain(2.0, p) == doctest::Approx(1e-3 / 8.0).epsilon(1e-12));
}

TEST_CASE("rician draw rejects nonpositive distance") {
    FadingParams p;
    Rng rng(1);
    CHECK_THROWS_AS(rician_draw(2, 2, 0.0, p, rng), std::invalid_argument);
    CHECK_THROWS_AS(rician_draw(2, 2, -1.0, p, rng), std::invalid_argument);
}

TEST_CASE("rician draw matches the requested shape and mean power") {
    FadingParams p;
    Rng rng(42);
    const double d = 37.0;
    const double gain = mean_link_gain(d, p);
    double power = 0.0;
    const int reps = 2000;
    const int rows = 4, cols = 4;
    for (int i = 0; i < reps; ++i) {
        const CMat h = rician_draw(rows, cols, d, p, rng, 0.3, -0.2);
        REQUIRE(h.rows == rows);
        REQUIRE(h.cols == cols);
        for (const cplx& v : h.a) power += std::norm(v);
    }
    power /= reps * rows * cols;
    // E|h|^2 = rho0 / d^vartheta regardless of the Rician factor
    CHECK(power == doctest::Approx(gain).epsilon(0.05));
}

TEST_CASE("rician draw is deterministic per seed") {
    FadingParams p;
    Rng a(5), b(5);
    const CMat ha = rician_draw(3, 2, 12.0, p, a, 0.1, 0.7);
    const CMat hb = rician_draw(3, 2, 12.0, p, b, 0.1, 0.7);
    for (size_t i = 0; i < ha.a.size(); ++i) CHECK(ha.a[i] == hb.a[i]);
}

TEST_CASE("los share grows with the rician factor") {
    // With a huge factor the draw collapses onto the deterministic steering
    // part, whose entries all have the same magnitude.
    FadingParams p;
    p.rician_k = 1e12;
    Rng rng(8);
    const CMat h = rician_draw(2, 3, 5.0, p, rng, 0.4, 0.1);
    const double mag = std::abs(h.a[0]);
    for (const cplx& v : h.a) CHECK(std::abs(v) == doctest::Approx(mag).epsilon(1e-3));
}

TEST_CASE("randomize_users keeps each user in its half space and disc") {
    Geometry g;
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        const Geometry r = randomize_users(g, rng);
        CHECK(geometry_valid(r));
        CHECK(r.user_t.x < r.stars.x);
        CHECK(r.user_r.x > r.stars.x);
        const double dt = std::hypot(r.user_t.x - g.stars.x, r.user_t.y - g.stars.y);
        const double dr = std::hypot(r.user_r.x - g.stars.x, r.user_r.y - g.stars.y);
        CHECK(dt <= g.user_radius + 1e-9);
        CHECK(dr <= g.user_radius + 1e-9);
        CHECK(r.user_t.z == 0.0);
        CHECK(r.user_r.z == 0.0);
    }
}

TEST_CASE("channel set links have the right dimensions") {
    Geometry g;
    FadingParams p;
    Rng rng(2);
    const ChannelSet ch = draw_channel_set(8, 4, g, p, rng);
    CHECK(ch.g_bs.rows == 8);
    CHECK(ch.g_bs.cols == 4);
    CHECK(ch.h_t.size() == 8);
    CHECK(ch.h_r.size() == 8);
    CHECK(std::abs(ch.hd_t) > 0.0);
    CHECK(std::abs(ch.hd_r) > 0.0);
}

TEST_CASE("dist is the euclidean norm") {
    CHECK(dist({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(dist({1, 2, 3}, {1, 2, 3}) == 0.0);
}
