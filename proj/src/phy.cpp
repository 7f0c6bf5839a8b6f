#include "starcache/phy.hpp"

#include <cmath>
#include <stdexcept>

namespace starcache {

ModeDecision select_mode(bool stars_hit_t, bool stars_hit_r) {
    ModeDecision md;
    md.t_controller_served = stars_hit_t;
    md.r_controller_served = stars_hit_r;
    if (stars_hit_t && stars_hit_r)
        md.mode = Mode::CT;
    else if (!stars_hit_t && !stars_hit_r)
        md.mode = Mode::CA;
    else
        md.mode = Mode::HM;
    return md;
}

cvec cascade_row(const cvec& h, const cvec& coeff, const CMat& g_bs) {
    if (static_cast<int>(h.size()) != g_bs.rows || coeff.size() != h.size())
        throw std::invalid_argument("cascade_row: dimension mismatch");
    cvec row(g_bs.cols, cplx{0.0, 0.0});
    for (int n = 0; n < g_bs.rows; ++n) {
        const cplx lhs = std::conj(h[n]) * coeff[n];
        for (int m = 0; m < g_bs.cols; ++m) row[m] += lhs * g_bs.at(n, m);
    }
    return row;
}

static cplx dot(const cvec& row, const cvec& w) {
    if (row.size() != w.size()) throw std::invalid_argument("beamformer length mismatch");
    cplx s{0.0, 0.0};
    for (size_t i = 0; i < row.size(); ++i) s += row[i] * w[i];
    return s;
}

static double norm2(const cvec& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return s;
}

double rate_from_sinr(double sinr, double bandwidth) {
    return bandwidth * std::log2(1.0 + sinr);
}

std::pair<double, double> rate_ct(const ChannelSet& ch, double pc_t, double pc_r,
                                  bool same_content, double bandwidth, double noise_w) {
    const double gt = std::norm(ch.hd_t);
    const double gr = std::norm(ch.hd_r);
    const double it = same_content ? 0.0 : gt * pc_r;
    const double ir = same_content ? 0.0 : gr * pc_t;
    return {rate_from_sinr(gt * pc_t / (it + noise_w), bandwidth),
            rate_from_sinr(gr * pc_r / (ir + noise_w), bandwidth)};
}

std::pair<double, double> rate_ca(const ChannelSet& ch, const CoefficientPair& coeff,
                                  const cvec& pb_t, const cvec& pb_r, bool same_content,
                                  double bandwidth, double noise_w) {
    const cvec row_t = cascade_row(ch.h_t, coeff.t, ch.g_bs);
    const cvec row_r = cascade_row(ch.h_r, coeff.r, ch.g_bs);
    const double st = std::norm(dot(row_t, pb_t));
    const double sr = std::norm(dot(row_r, pb_r));
    const double it = same_content ? 0.0 : std::norm(dot(row_t, pb_r));
    const double ir = same_content ? 0.0 : std::norm(dot(row_r, pb_t));
    return {rate_from_sinr(st / (it + noise_w), bandwidth),
            rate_from_sinr(sr / (ir + noise_w), bandwidth)};
}

std::pair<double, double> rate_hm(const ChannelSet& ch, const CoefficientPair& coeff,
                                  const cvec& pb_bs, double pc_stars,
                                  bool t_controller_served, double bandwidth,
                                  double noise_w) {
    const cvec row_t = cascade_row(ch.h_t, coeff.t, ch.g_bs);
    const cvec row_r = cascade_row(ch.h_r, coeff.r, ch.g_bs);
    if (t_controller_served) {
        const double sinr_t =
            std::norm(ch.hd_t) * pc_stars / (std::norm(dot(row_t, pb_bs)) + noise_w);
        const double sinr_r =
            std::norm(dot(row_r, pb_bs)) / (std::norm(ch.hd_r) * pc_stars + noise_w);
        return {rate_from_sinr(sinr_t, bandwidth), rate_from_sinr(sinr_r, bandwidth)};
    }
    const double sinr_r =
        std::norm(ch.hd_r) * pc_stars / (std::norm(dot(row_r, pb_bs)) + noise_w);
    const double sinr_t =
        std::norm(dot(row_t, pb_bs)) / (std::norm(ch.hd_t) * pc_stars + noise_w);
    return {rate_from_sinr(sinr_t, bandwidth), rate_from_sinr(sinr_r, bandwidth)};
}

std::pair<double, double> evaluate_rates(const ModeDecision& md, const ChannelSet& ch,
                                         const CoefficientPair& coeff,
                                         const BeamformingDecision& d, bool same_content,
                                         double bandwidth, double noise_w) {
    switch (md.mode) {
        case Mode::CT:
            return rate_ct(ch, d.pc_t, d.pc_r, same_content, bandwidth, noise_w);
        case Mode::CA:
            return rate_ca(ch, coeff, d.pb_t, d.pb_r, same_content, bandwidth, noise_w);
        case Mode::HM:
        default:
            return md.t_controller_served
                       ? rate_hm(ch, coeff, d.pb_r, d.pc_t, true, bandwidth, noise_w)
                       : rate_hm(ch, coeff, d.pb_t, d.pc_r, false, bandwidth, noise_w);
    }
}

double wireless_power(const ModeDecision& md, const BeamformingDecision& d) {
    switch (md.mode) {
        case Mode::CT:
            return d.pc_t + d.pc_r;
        case Mode::CA:
            return norm2(d.pb_t) + norm2(d.pb_r);
        case Mode::HM:
        default:
            return md.t_controller_served ? d.pc_t + norm2(d.pb_r)
                                          : d.pc_r + norm2(d.pb_t);
    }
}

double system_power(double wireless_w, int remote_count, int replaced_count,
                    const PowerTariff& tariff) {
    return wireless_w + remote_count * tariff.backhaul_w + replaced_count * tariff.push_w;
}

}  // namespace starcache
