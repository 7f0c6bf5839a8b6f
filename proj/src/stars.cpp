#include "starcache/stars.hpp"

#include <cmath>
#include <stdexcept>

namespace starcache {

std::vector<double> StarsProfile::beta_r() const {
    std::vector<double> br(beta_t.size());
    for (size_t n = 0; n < beta_t.size(); ++n)
        br[n] = std::sqrt(std::max(0.0, 1.0 - beta_t[n] * beta_t[n]));
    return br;
}

CouplingMask CouplingMask::from_index(uint64_t index, int n) {
    CouplingMask m;
    m.bits.resize(n);
    for (int i = 0; i < n; ++i) m.bits[i] = static_cast<uint8_t>((index >> i) & 1u);
    return m;
}

uint64_t CouplingMask::to_index() const {
    uint64_t idx = 0;
    for (int i = 0; i < size(); ++i)
        if (bits[i]) idx |= (uint64_t{1} << i);
    return idx;
}

CoefficientPair coefficient_matrices(const StarsProfile& profile) {
    const auto br = profile.beta_r();
    CoefficientPair cp;
    cp.t.resize(profile.size());
    cp.r.resize(profile.size());
    for (int n = 0; n < profile.size(); ++n) {
        cp.t[n] = profile.beta_t[n] * cplx{std::cos(profile.theta_t[n]), std::sin(profile.theta_t[n])};
        cp.r[n] = br[n] * cplx{std::cos(profile.theta_r[n]), std::sin(profile.theta_r[n])};
    }
    return cp;
}

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

std::vector<double> couple_transmission_phase(const std::vector<double>& theta_r,
                                              const CouplingMask& mask) {
    if (theta_r.size() != mask.bits.size())
        throw std::invalid_argument("couple_transmission_phase: phase/mask length mismatch");
    std::vector<double> theta_t(theta_r.size());
    for (size_t n = 0; n < theta_r.size(); ++n) {
        const double off = mask.bits[n] ? M_PI_2 : -M_PI_2;
        theta_t[n] = wrap_angle(theta_r[n] + off);
    }
    return theta_t;
}

std::vector<ProfileViolation> validate(const StarsProfile& profile, PhaseModel mode) {
    std::vector<ProfileViolation> out;
    const int n = profile.size();
    if (static_cast<int>(profile.theta_t.size()) != n || static_cast<int>(profile.theta_r.size()) != n) {
        out.push_back({-1, "phase vectors do not match amplitude vector length"});
        return out;
    }
    const auto br = profile.beta_r();
    for (int i = 0; i < n; ++i) {
        if (profile.beta_t[i] < 0.0 || profile.beta_t[i] > 1.0)
            out.push_back({i, "transmission amplitude outside [0, 1]"});
        const double split = profile.beta_t[i] * profile.beta_t[i] + br[i] * br[i];
        if (std::abs(split - 1.0) > 1e-12)
            out.push_back({i, "energy conservation violated"});
        for (double phase : {profile.theta_t[i], profile.theta_r[i]}) {
            if (phase < 0.0 || phase >= 2.0 * M_PI) {
                out.push_back({i, "phase outside [0, 2*pi)"});
                break;
            }
        }
        if (mode == PhaseModel::coupled &&
            std::abs(std::cos(profile.theta_t[i] - profile.theta_r[i])) > 1e-9)
            out.push_back({i, "coupled phase-shift constraint violated"});
    }
    return out;
}

}  // namespace starcache
