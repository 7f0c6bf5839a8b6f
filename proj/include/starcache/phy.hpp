#pragma once

#include <utility>

#include "starcache/catalog.hpp"
#include "starcache/channel.hpp"
#include "starcache/stars.hpp"

namespace starcache {

/// Delivery protocol for one slot: controller transmits both cached contents
/// (CT), the BS delivers both through the surface (CA), or one user each (HM).
enum class Mode { CT, CA, HM };

struct ModeDecision {
    Mode mode = Mode::CA;
    bool t_controller_served = false;
    bool r_controller_served = false;
};

/// Pure function of the two STARS-cache hit flags: both -> CT, neither -> CA,
/// exactly one -> HM with the hit user served by the controller.
ModeDecision select_mode(bool stars_hit_t, bool stars_hit_r);

/// Continuous transmit decision for one slot. Beamformer entries carry W^(1/2);
/// controller powers are in watts.
struct BeamformingDecision {
    cvec pb_t, pb_r;          // M x 1 BS beamformers per user stream
    double pc_t = 0.0;        // controller power toward the T user
    double pc_r = 0.0;        // controller power toward the R user
};

/// Everything the reward needs from one slot's delivery.
struct LinkBudget {
    Mode mode = Mode::CA;
    bool same_content = false;
    double rate_t = 0.0, rate_r = 0.0;   // bit/s
    double wireless_w = 0.0;             // P_w
    double system_w = 0.0;               // P_s
    bool qos_t = false, qos_r = false;
};

/// Row vector h^H diag(coeff) G, the cascaded STARS link as seen per BS antenna.
cvec cascade_row(const cvec& h, const cvec& coeff, const CMat& g_bs);

double rate_from_sinr(double sinr, double bandwidth);

/// Controller-only delivery. Different contents interfere at each receiver:
///   SINR_k = |hd_k|^2 Pc_k / (|hd_k|^2 Pc_other + sigma2)
/// while a shared content drops the interference term. Returns (R_T, R_R).
std::pair<double, double> rate_ct(const ChannelSet& ch, double pc_t, double pc_r,
                                  bool same_content, double bandwidth, double noise_w);

/// BS delivery through the surface. Desired gain |h_k^H Theta_q G pb_k|^2, with
/// the other stream as interference unless both users want the same content.
/// Returns (R_T, R_R). Throws std::invalid_argument on dimension mismatch.
std::pair<double, double> rate_ca(const ChannelSet& ch, const CoefficientPair& coeff,
                                  const cvec& pb_t, const cvec& pb_r, bool same_content,
                                  double bandwidth, double noise_w);

/// Mixed delivery: the controller serves one user directly while the BS serves
/// the other through the surface; each stream interferes at the other receiver.
/// pb_bs is the BS beamformer for the BS-served user, pc_stars the controller
/// power for the controller-served user. Returns (R_T, R_R).
std::pair<double, double> rate_hm(const ChannelSet& ch, const CoefficientPair& coeff,
                                  const cvec& pb_bs, double pc_stars,
                                  bool t_controller_served, double bandwidth,
                                  double noise_w);

/// Dispatch on the mode decision; same_content is ignored for HM (a shared
/// content can never split across the caches).
std::pair<double, double> evaluate_rates(const ModeDecision& md, const ChannelSet& ch,
                                         const CoefficientPair& coeff,
                                         const BeamformingDecision& d, bool same_content,
                                         double bandwidth, double noise_w);

/// Radiated power of the active transmitters for the slot:
/// CT -> Pc_T + Pc_R, CA -> ||pb_T||^2 + ||pb_R||^2, HM -> served Pc + other ||pb||^2.
double wireless_power(const ModeDecision& md, const BeamformingDecision& d);

/// P_s = P_w + lambda_r * P_bh + lambda_u * P_u.
double system_power(double wireless_w, int remote_count, int replaced_count,
                    const PowerTariff& tariff);

}  // namespace starcache
