#pragma once

#include <complex>
#include <vector>

#include "starcache/rng.hpp"

namespace starcache {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Row-major complex matrix, just big enough for the channel algebra here.
struct CMat {
    int rows = 0;
    int cols = 0;
    cvec a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

double dist(const Vec3& a, const Vec3& b);

/// Node placement. The STARS surface sits in the plane x = stars.x; the R-space
/// is the BS side (x > stars.x) and the T-space is the far side (x < stars.x).
struct Geometry {
    Vec3 bs{150.0, 0.0, 15.0};
    Vec3 stars{0.0, 150.0, 5.0};
    Vec3 user_t{-2.0, 150.0, 0.0};
    Vec3 user_r{2.0, 150.0, 0.0};
    double user_radius = 3.0;
};

/// Drop each user uniformly in a disc of user_radius around the STARS ground
/// position, mirrored onto its own half-space.
Geometry randomize_users(const Geometry& g, Rng& rng);

bool geometry_valid(const Geometry& g);

struct FadingParams {
    double rho0 = 1e-3;               // path gain at 1 m (-30 dB)
    double exponent = 2.0;            // vartheta
    double rician_k = 1.9952623149688795;  // epsilon, linear (3 dB)
};

/// One slot's channel draw.
struct ChannelSet {
    CMat g_bs;       // N x M, BS -> STARS elements
    cvec h_t, h_r;   // N x 1, STARS elements -> T/R user
    cplx hd_t{}, hd_r{};  // controller antenna -> T/R user
};

/// Rician block-fading draw with distance path loss:
///   entry = sqrt(rho0/d^vartheta) (sqrt(eps/(1+eps)) LoS + sqrt(1/(1+eps)) NLoS)
/// LoS is a deterministic unit-modulus steering structure built from the sines
/// passed in (rx along rows, tx along columns); NLoS is CN(0, 1).
/// Throws std::invalid_argument for d <= 0.
CMat rician_draw(int rows, int cols, double d, const FadingParams& p, Rng& rng,
                 double sin_rx = 0.0, double sin_tx = 0.0);

/// One independent rician_draw per link with pairwise distances and steering
/// angles taken from the geometry.
ChannelSet draw_channel_set(int num_elements, int num_antennas, const Geometry& g,
                            const FadingParams& p, Rng& rng);

/// Mean link power rho0/d^vartheta; used both by the sampler and for state
/// feature normalization.
double mean_link_gain(double d, const FadingParams& p);

}  // namespace starcache
