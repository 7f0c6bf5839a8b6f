#include "starcache/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace starcache {

double dist(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Geometry randomize_users(const Geometry& g, Rng& rng) {
    Geometry out = g;
    const auto draw_offset = [&](double sign) {
        // uniform in the disc, then |x| pushed onto the requested half-space
        const double r = g.user_radius * std::sqrt(rng.uniform());
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        Vec3 p;
        p.x = g.stars.x + sign * std::abs(r * std::cos(phi));
        p.y = g.stars.y + r * std::sin(phi);
        p.z = 0.0;
        return p;
    };
    out.user_t = draw_offset(-1.0);
    out.user_r = draw_offset(+1.0);
    return out;
}

bool geometry_valid(const Geometry& g) {
    return g.user_t.x < g.stars.x && g.user_r.x > g.stars.x && g.bs.x > g.stars.x;
}

double mean_link_gain(double d, const FadingParams& p) {
    return p.rho0 / std::pow(d, p.exponent);
}

CMat rician_draw(int rows, int cols, double d, const FadingParams& p, Rng& rng,
                 double sin_rx, double sin_tx) {
    if (d <= 0.0) throw std::invalid_argument("rician_draw: distance must be positive");
    const double amp = std::sqrt(mean_link_gain(d, p));
    const double w_los = std::sqrt(p.rician_k / (1.0 + p.rician_k));
    const double w_nlos = std::sqrt(1.0 / (1.0 + p.rician_k));
    CMat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            // far-field steering phases at half-wavelength element spacing
            const double phase = M_PI * (r * sin_rx - c * sin_tx);
            const cplx los{std::cos(phase), std::sin(phase)};
            const cplx nlos{rng.normal() * M_SQRT1_2, rng.normal() * M_SQRT1_2};
            m.at(r, c) = amp * (w_los * los + w_nlos * nlos);
        }
    }
    return m;
}

namespace {

// sine of the departure/arrival angle seen by a linear array laid along y
double array_sine(const Vec3& from, const Vec3& to) {
    const double d = dist(from, to);
    return (to.y - from.y) / d;
}

}  // namespace

ChannelSet draw_channel_set(int num_elements, int num_antennas, const Geometry& g,
                            const FadingParams& p, Rng& rng) {
    if (!geometry_valid(g)) throw std::invalid_argument("draw_channel_set: users must sit on opposite half-spaces");
    ChannelSet cs;
    cs.g_bs = rician_draw(num_elements, num_antennas, dist(g.bs, g.stars), p, rng,
                          array_sine(g.stars, g.bs), array_sine(g.bs, g.stars));
    const CMat ht = rician_draw(num_elements, 1, dist(g.stars, g.user_t), p, rng,
                                array_sine(g.stars, g.user_t), 0.0);
    const CMat hr = rician_draw(num_elements, 1, dist(g.stars, g.user_r), p, rng,
                                array_sine(g.stars, g.user_r), 0.0);
    cs.h_t = ht.a;
    cs.h_r = hr.a;
    cs.hd_t = rician_draw(1, 1, dist(g.stars, g.user_t), p, rng).at(0, 0);
    cs.hd_r = rician_draw(1, 1, dist(g.stars, g.user_r), p, rng).at(0, 0);
    return cs;
}

}  // namespace starcache
