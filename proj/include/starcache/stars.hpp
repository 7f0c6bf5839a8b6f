#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starcache/channel.hpp"

namespace starcache {

/// Per-element energy-splitting profile. The agent controls beta_t; beta_r is
/// derived from energy conservation, so beta_t^2 + beta_r^2 = 1 holds by
/// construction.
struct StarsProfile {
    std::vector<double> beta_t;              // [0, 1]
    std::vector<double> theta_t, theta_r;    // [0, 2*pi)

    int size() const { return static_cast<int>(beta_t.size()); }
    std::vector<double> beta_r() const;
};

/// Binary transmission-phase decision for the coupled model: bit n = 1 selects
/// theta_t[n] = theta_r[n] + pi/2, bit 0 selects theta_r[n] - pi/2.
struct CouplingMask {
    std::vector<uint8_t> bits;

    int size() const { return static_cast<int>(bits.size()); }
    static CouplingMask from_index(uint64_t index, int n);
    uint64_t to_index() const;
};

/// Diagonals of the transmission/reflection coefficient matrices,
/// entry n = beta_{q,n} * exp(j theta_{q,n}).
struct CoefficientPair {
    cvec t, r;
};

CoefficientPair coefficient_matrices(const StarsProfile& profile);

/// Reduce an angle to [0, 2*pi).
double wrap_angle(double a);

/// theta_t[n] = theta_r[n] +/- pi/2 (mod 2*pi) per mask bit, so that
/// cos(theta_t - theta_r) = 0. Throws std::invalid_argument on length mismatch.
std::vector<double> couple_transmission_phase(const std::vector<double>& theta_r,
                                              const CouplingMask& mask);

enum class PhaseModel { independent, coupled };

struct ProfileViolation {
    int element;
    std::string what;
};

/// Checks amplitude range, phase range and energy conservation; in coupled mode
/// additionally |cos(theta_t - theta_r)| <= 1e-9 per element. Returns the full
/// violation list instead of aborting.
std::vector<ProfileViolation> validate(const StarsProfile& profile, PhaseModel mode);

}  // namespace starcache
