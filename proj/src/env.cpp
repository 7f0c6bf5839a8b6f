#include "starcache/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starcache {

void FrequencyTable::observe(int content) {
    if (content < 1 || content > static_cast<int>(counts.size()))
        throw std::invalid_argument("FrequencyTable::observe: content out of range");
    ++counts[content - 1];
}

uint64_t FrequencyTable::total() const {
    uint64_t s = 0;
    for (uint64_t c : counts) s += c;
    return s;
}

int decode_cache_equal_width(double phi, int num_contents) {
    const int f = static_cast<int>(std::ceil(phi * num_contents));
    return std::clamp(f, 1, num_contents);
}

std::vector<double> segment_widths(const FrequencyTable& table, int num_contents) {
    std::vector<double> widths(num_contents, 1.0 / num_contents);
    const uint64_t total = table.total();
    if (total == 0) return widths;
    const double chi = table.static_share;
    for (int n = 0; n < num_contents; ++n)
        widths[n] = chi / num_contents +
                    (1.0 - chi) * static_cast<double>(table.counts[n]) / total;
    return widths;
}

int decode_cache_frequency_aware(double phi, const FrequencyTable& table,
                                 int num_contents) {
    const uint64_t total = table.total();
    if (total == 0 || table.static_share == 1.0)
        return decode_cache_equal_width(phi, num_contents);
    const double chi = table.static_share;
    uint64_t prefix = 0;
    for (int n = 1; n <= num_contents; ++n) {
        prefix += table.counts[n - 1];
        const double cum = chi * n / num_contents +
                           (1.0 - chi) * static_cast<double>(prefix) / total;
        if (cum >= phi) return n;
    }
    return num_contents;
}

int ActionLayout::total() const {
    return cache_bs + cache_stars + beamformer + theta_r + beta_t + theta_t + pc + mask;
}

ActionLayout make_action_layout(const EnvConfig& cfg) {
    const bool stars = !cfg.variant.ris_surface;
    ActionLayout l;
    l.cache_bs = cfg.variant.bs_cache ? cfg.bs_capacity : 0;
    l.cache_stars = cfg.variant.stars_cache ? cfg.stars_capacity : 0;
    l.beamformer = 4 * cfg.num_antennas;
    l.theta_r = cfg.num_elements;
    l.beta_t = stars ? cfg.num_elements : 0;
    l.theta_t = (stars && cfg.phase == PhaseModel::independent) ? cfg.num_elements : 0;
    l.pc = cfg.variant.stars_cache ? 2 : 0;
    l.mask = (stars && cfg.phase == PhaseModel::coupled && cfg.serialized_mask)
                 ? cfg.num_elements
                 : 0;
    return l;
}

void decode_continuous_controls(const std::vector<double>& action,
                                const ActionLayout& layout, const EnvConfig& cfg,
                                const CouplingMask* mask, BeamformingDecision& decision,
                                StarsProfile& profile) {
    if (static_cast<int>(action.size()) != layout.total())
        throw std::invalid_argument("decode_continuous_controls: action length mismatch");
    const int m = cfg.num_antennas;
    const int n = cfg.num_elements;

    const double entry_scale = std::sqrt(cfg.bs_power_cap / 2.0);
    decision.pb_t.resize(m);
    decision.pb_r.resize(m);
    const int ob = layout.off_beamformer();
    for (int i = 0; i < m; ++i) {
        decision.pb_t[i] = cplx{action[ob + 2 * i], action[ob + 2 * i + 1]} * entry_scale;
        decision.pb_r[i] =
            cplx{action[ob + 2 * m + 2 * i], action[ob + 2 * m + 2 * i + 1]} * entry_scale;
    }
    double total = 0.0;
    for (int i = 0; i < m; ++i) total += std::norm(decision.pb_t[i]) + std::norm(decision.pb_r[i]);
    const double cap = m * cfg.bs_power_cap;
    if (total > cap) {
        const double shrink = std::sqrt(cap / total);
        for (int i = 0; i < m; ++i) {
            decision.pb_t[i] *= shrink;
            decision.pb_r[i] *= shrink;
        }
    }

    profile.theta_r.resize(n);
    const int otr = layout.off_theta_r();
    for (int i = 0; i < n; ++i)
        profile.theta_r[i] = wrap_angle((action[otr + i] + 1.0) * M_PI);

    profile.beta_t.resize(n);
    if (cfg.variant.ris_surface) {
        for (int i = 0; i < n; ++i) profile.beta_t[i] = i < n / 2 ? 1.0 : 0.0;
        profile.theta_t = profile.theta_r;
    } else {
        const int obt = layout.off_beta_t();
        for (int i = 0; i < n; ++i) profile.beta_t[i] = (action[obt + i] + 1.0) / 2.0;
        if (layout.theta_t > 0) {
            profile.theta_t.resize(n);
            const int ott = layout.off_theta_t();
            for (int i = 0; i < n; ++i)
                profile.theta_t[i] = wrap_angle((action[ott + i] + 1.0) * M_PI);
        } else {
            if (mask == nullptr)
                throw std::logic_error(
                    "decode_continuous_controls: coupled model needs a mask");
            profile.theta_t = couple_transmission_phase(profile.theta_r, *mask);
        }
    }

    decision.pc_t = 0.0;
    decision.pc_r = 0.0;
    if (layout.pc > 0) {
        const int op = layout.off_pc();
        decision.pc_t = std::abs(action[op]) * cfg.controller_power_cap;
        decision.pc_r = std::abs(action[op + 1]) * cfg.controller_power_cap;
    }
}

double compute_reward(double rate_t, double rate_r, double qos_rate, double system_w,
                      int total_hits, const RewardParams& params, bool include_hit_term) {
    double r = 0.0;
    if (rate_t >= qos_rate) r += params.qos_reward;
    if (rate_r >= qos_rate) r += params.qos_reward;
    r -= params.power_weight * system_w;
    if (include_hit_term) r += params.hit_weight * total_hits;
    return r;
}

CachingEnv::CachingEnv(const EnvConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      layout_(make_action_layout(cfg)),
      catalog_(make_catalog(cfg.num_contents, cfg.zipf_alpha)),
      rng_(seed),
      geo_(cfg.geometry) {
    freq_.counts.assign(cfg.num_contents, 0);
    freq_.static_share = cfg.static_share;
    reset();
}

int CachingEnv::state_dim() const {
    const int slots = (cfg_.variant.bs_cache ? cfg_.bs_capacity : 0) +
                      (cfg_.variant.stars_cache ? cfg_.stars_capacity : 0);
    const int chfeat = 2 * cfg_.num_elements * cfg_.num_antennas + 4 * cfg_.num_elements + 4;
    return slots + 2 + chfeat;
}

int CachingEnv::internal_state_dim() const {
    const int chfeat = 2 * cfg_.num_elements * cfg_.num_antennas + 4 * cfg_.num_elements + 4;
    return 2 + chfeat + layout_.total();
}

std::vector<double> CachingEnv::reset() {
    bs_cache_ = make_cache(Node::BS, cfg_.variant.bs_cache ? cfg_.bs_capacity : 0,
                           cfg_.num_contents);
    stars_cache_ = make_cache(Node::STARS,
                              cfg_.variant.stars_cache ? cfg_.stars_capacity : 0,
                              cfg_.num_contents);
    geo_ = randomize_users(cfg_.geometry, rng_);
    scale_g_ = 1.0 / std::sqrt(mean_link_gain(dist(geo_.bs, geo_.stars), cfg_.fading));
    scale_ht_ = 1.0 / std::sqrt(mean_link_gain(dist(geo_.stars, geo_.user_t), cfg_.fading));
    scale_hr_ = 1.0 / std::sqrt(mean_link_gain(dist(geo_.stars, geo_.user_r), cfg_.fading));
    scale_hdt_ = scale_ht_;
    scale_hdr_ = scale_hr_;
    draw_slot();
    return current_state();
}

void CachingEnv::draw_slot() {
    req_ = sample_request_pair(catalog_, rng_);
    freq_.observe(req_.t);
    freq_.observe(req_.r);
    ch_ = draw_channel_set(cfg_.num_elements, cfg_.num_antennas, geo_, cfg_.fading, rng_);
}

void CachingEnv::append_cache_block(std::vector<double>& out, const CacheState& c) const {
    const auto held = c.contents();
    for (int f : held) out.push_back(static_cast<double>(f) / cfg_.num_contents);
    for (int i = static_cast<int>(held.size()); i < c.capacity; ++i) out.push_back(0.0);
}

void CachingEnv::append_channel_features(std::vector<double>& out) const {
    for (const cplx& v : ch_.g_bs.a) {
        out.push_back(v.real() * scale_g_);
        out.push_back(v.imag() * scale_g_);
    }
    for (const cplx& v : ch_.h_t) {
        out.push_back(v.real() * scale_ht_);
        out.push_back(v.imag() * scale_ht_);
    }
    for (const cplx& v : ch_.h_r) {
        out.push_back(v.real() * scale_hr_);
        out.push_back(v.imag() * scale_hr_);
    }
    out.push_back(ch_.hd_t.real() * scale_hdt_);
    out.push_back(ch_.hd_t.imag() * scale_hdt_);
    out.push_back(ch_.hd_r.real() * scale_hdr_);
    out.push_back(ch_.hd_r.imag() * scale_hdr_);
}

std::vector<double> CachingEnv::current_state() const {
    std::vector<double> s;
    s.reserve(state_dim());
    if (cfg_.variant.bs_cache) append_cache_block(s, bs_cache_);
    if (cfg_.variant.stars_cache) append_cache_block(s, stars_cache_);
    s.push_back(static_cast<double>(req_.t) / cfg_.num_contents);
    s.push_back(static_cast<double>(req_.r) / cfg_.num_contents);
    append_channel_features(s);
    return s;
}

std::vector<double> CachingEnv::internal_state(const std::vector<double>& action) const {
    std::vector<double> s;
    s.reserve(internal_state_dim());
    s.push_back(static_cast<double>(req_.t) / cfg_.num_contents);
    s.push_back(static_cast<double>(req_.r) / cfg_.num_contents);
    append_channel_features(s);
    s.insert(s.end(), action.begin(), action.end());
    return s;
}

CouplingMask CachingEnv::mask_from_action(const std::vector<double>& action) const {
    CouplingMask m;
    m.bits.resize(cfg_.num_elements);
    const int om = layout_.off_mask();
    for (int i = 0; i < cfg_.num_elements; ++i)
        m.bits[i] = action[om + i] > 0.0 ? 1 : 0;
    return m;
}

EvalResult CachingEnv::evaluate(const std::vector<double>& action,
                                const CouplingMask* mask) const {
    if (static_cast<int>(action.size()) != layout_.total())
        throw std::invalid_argument("CachingEnv::evaluate: action length mismatch");

    std::vector<int> target_bs, target_stars;
    const bool fa = cfg_.frequency_aware;
    for (int i = 0; i < layout_.cache_bs; ++i) {
        const double phi = (action[layout_.off_cache_bs() + i] + 1.0) / 2.0;
        target_bs.push_back(fa ? decode_cache_frequency_aware(phi, freq_, cfg_.num_contents)
                               : decode_cache_equal_width(phi, cfg_.num_contents));
    }
    for (int i = 0; i < layout_.cache_stars; ++i) {
        const double phi = (action[layout_.off_cache_stars() + i] + 1.0) / 2.0;
        target_stars.push_back(fa ? decode_cache_frequency_aware(phi, freq_, cfg_.num_contents)
                                  : decode_cache_equal_width(phi, cfg_.num_contents));
    }
    const CacheUpdate up_bs = apply_cache_decision(bs_cache_, target_bs);
    const CacheUpdate up_stars = apply_cache_decision(stars_cache_, target_stars);

    const ServingDecision serve = lookup_serving(req_, up_bs.state, up_stars.state);
    const ModeDecision md = select_mode(serve.tier_t == ServeTier::STARS,
                                        serve.tier_r == ServeTier::STARS);

    CouplingMask derived;
    const CouplingMask* use_mask = mask;
    if (use_mask == nullptr && layout_.mask > 0) {
        derived = mask_from_action(action);
        use_mask = &derived;
    }

    BeamformingDecision decision;
    StarsProfile profile;
    decode_continuous_controls(action, layout_, cfg_, use_mask, decision, profile);
    const CoefficientPair coeff = coefficient_matrices(profile);

    const bool same = req_.t == req_.r;
    const auto [rate_t, rate_r] =
        evaluate_rates(md, ch_, coeff, decision, same, cfg_.bandwidth, cfg_.noise_w);

    EvalResult res;
    res.replaced = up_bs.replaced + up_stars.replaced;
    res.hits_bs = serve.hits_bs;
    res.hits_stars = serve.hits_stars;
    res.remote = serve.remote_count;
    res.bs_cache = up_bs.state;
    res.stars_cache = up_stars.state;

    res.budget.mode = md.mode;
    res.budget.same_content = same;
    res.budget.rate_t = rate_t;
    res.budget.rate_r = rate_r;
    res.budget.wireless_w = wireless_power(md, decision);
    res.budget.system_w =
        system_power(res.budget.wireless_w, serve.remote_count, res.replaced, cfg_.tariff);
    res.budget.qos_t = rate_t >= cfg_.qos_rate;
    res.budget.qos_r = rate_r >= cfg_.qos_rate;
    res.qos_met = (res.budget.qos_t ? 1 : 0) + (res.budget.qos_r ? 1 : 0);

    const int hits = res.hits_bs + res.hits_stars;
    res.reward = compute_reward(rate_t, rate_r, cfg_.qos_rate, res.budget.system_w, hits,
                                cfg_.reward, true);
    res.internal_reward = compute_reward(rate_t, rate_r, cfg_.qos_rate,
                                         res.budget.system_w, hits, cfg_.reward, false);
    return res;
}

StepResult CachingEnv::step(const std::vector<double>& action) {
    if (!cfg_.variant.ris_surface && cfg_.phase == PhaseModel::coupled &&
        layout_.mask == 0)
        throw std::logic_error("CachingEnv::step: coupled model needs step_with_mask");
    EvalResult ev = evaluate(action, nullptr);
    return commit(ev);
}

StepResult CachingEnv::step_with_mask(const std::vector<double>& action,
                                      const CouplingMask& mask) {
    EvalResult ev = evaluate(action, &mask);
    return commit(ev);
}

StepResult CachingEnv::commit(EvalResult& ev) {
    bs_cache_ = std::move(ev.bs_cache);
    stars_cache_ = std::move(ev.stars_cache);
    StepResult sr;
    sr.reward = ev.reward;
    sr.internal_reward = ev.internal_reward;
    sr.budget = ev.budget;
    sr.hits_bs = ev.hits_bs;
    sr.hits_stars = ev.hits_stars;
    sr.remote = ev.remote;
    sr.replaced = ev.replaced;
    sr.qos_met = ev.qos_met;
    draw_slot();
    sr.state = current_state();
    return sr;
}

}  // namespace starcache
