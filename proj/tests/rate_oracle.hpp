#pragma once

// Direct Eigen evaluation of the per-protocol link budgets, written against
// the SINR definitions themselves rather than the library's scalar loops, so
// the two implementations can cross-check each other.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "starcache/channel.hpp"
#include "starcache/rng.hpp"
#include "starcache/stars.hpp"

namespace rate_oracle {

using starcache::CMat;
using starcache::ChannelSet;
using starcache::CoefficientPair;
using starcache::cplx;
using starcache::cvec;

inline Eigen::VectorXcd to_eigen(const cvec& v) {
    Eigen::VectorXcd out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

inline Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out(r, c) = m.at(r, c);
    return out;
}

// |h^H diag(coeff) G p|^2
inline double cascade_gain(const cvec& h, const cvec& coeff, const CMat& g,
                           const cvec& p) {
    const Eigen::MatrixXcd theta = to_eigen(coeff).asDiagonal();
    const std::complex<double> amp =
        to_eigen(h).adjoint() * theta * to_eigen(g) * to_eigen(p);
    return std::norm(amp);
}

inline double log_rate(double sinr, double bw) { return bw * std::log2(1.0 + sinr); }

struct Rates {
    double t, r;
};

inline Rates ct(const ChannelSet& ch, double pc_t, double pc_r, bool same, double bw,
                double n0) {
    const double gt = std::norm(ch.hd_t), gr = std::norm(ch.hd_r);
    const double it = same ? 0.0 : gt * pc_r;
    const double ir = same ? 0.0 : gr * pc_t;
    return {log_rate(gt * pc_t / (it + n0), bw), log_rate(gr * pc_r / (ir + n0), bw)};
}

inline Rates ca(const ChannelSet& ch, const CoefficientPair& coeff, const cvec& pb_t,
                const cvec& pb_r, bool same, double bw, double n0) {
    const double st = cascade_gain(ch.h_t, coeff.t, ch.g_bs, pb_t);
    const double sr = cascade_gain(ch.h_r, coeff.r, ch.g_bs, pb_r);
    const double it = same ? 0.0 : cascade_gain(ch.h_t, coeff.t, ch.g_bs, pb_r);
    const double ir = same ? 0.0 : cascade_gain(ch.h_r, coeff.r, ch.g_bs, pb_t);
    return {log_rate(st / (it + n0), bw), log_rate(sr / (ir + n0), bw)};
}

inline Rates hm(const ChannelSet& ch, const CoefficientPair& coeff, const cvec& pb_bs,
                double pc, bool t_from_controller, double bw, double n0) {
    if (t_from_controller) {
        // controller -> T user, BS beam -> R user; each leaks into the other
        const double st = std::norm(ch.hd_t) * pc;
        const double it = cascade_gain(ch.h_t, coeff.t, ch.g_bs, pb_bs);
        const double sr = cascade_gain(ch.h_r, coeff.r, ch.g_bs, pb_bs);
        const double ir = std::norm(ch.hd_r) * pc;
        return {log_rate(st / (it + n0), bw), log_rate(sr / (ir + n0), bw)};
    }
    const double sr = std::norm(ch.hd_r) * pc;
    const double ir = cascade_gain(ch.h_r, coeff.r, ch.g_bs, pb_bs);
    const double st = cascade_gain(ch.h_t, coeff.t, ch.g_bs, pb_bs);
    const double it = std::norm(ch.hd_t) * pc;
    return {log_rate(st / (it + n0), bw), log_rate(sr / (ir + n0), bw)};
}

// A random physical instance for cross-checking, drawn through the library's
// own channel sampler.
struct Instance {
    ChannelSet ch;
    CoefficientPair coeff;
    cvec pb_t, pb_r;
    double pc_t, pc_r;
    bool same;
};

inline Instance random_instance(int n, int m, starcache::Rng& rng) {
    Instance in;
    starcache::Geometry geo = starcache::randomize_users(starcache::Geometry{}, rng);
    starcache::FadingParams fading;
    in.ch = starcache::draw_channel_set(n, m, geo, fading, rng);
    starcache::StarsProfile prof;
    prof.beta_t.resize(n);
    prof.theta_t.resize(n);
    prof.theta_r.resize(n);
    for (int i = 0; i < n; ++i) {
        prof.beta_t[i] = rng.uniform();
        prof.theta_t[i] = rng.uniform(0.0, 2.0 * M_PI);
        prof.theta_r[i] = rng.uniform(0.0, 2.0 * M_PI);
    }
    in.coeff = starcache::coefficient_matrices(prof);
    in.pb_t.resize(m);
    in.pb_r.resize(m);
    for (int i = 0; i < m; ++i) {
        in.pb_t[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * 0.15;
        in.pb_r[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * 0.15;
    }
    in.pc_t = rng.uniform(0.0, 0.1);
    in.pc_r = rng.uniform(0.0, 0.1);
    in.same = rng.uniform() < 0.5;
    return in;
}

}  // namespace rate_oracle
