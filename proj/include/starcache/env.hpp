#pragma once

#include <cstdint>
#include <vector>

#include "starcache/catalog.hpp"
#include "starcache/channel.hpp"
#include "starcache/phy.hpp"
#include "starcache/stars.hpp"

namespace starcache {

/// Running request histogram driving the frequency-aware cache codec. Counts
/// accumulate over the whole run, surviving episode resets.
struct FrequencyTable {
    std::vector<uint64_t> counts;   // Psi, one per content
    double static_share = 0.3;      // chi, the popularity-independent floor

    void observe(int content);      // 1-based
    uint64_t total() const;
};

struct RewardParams {
    double qos_reward = 1.7;     // r_q, earned per user meeting the rate target
    double power_weight = 1.0;   // varpi_p
    double hit_weight = 3.0;     // varpi_h
};

/// phi is the cache slot value after rescaling the [-1, 1] network output to
/// [0, 1]. Equal width: f = ceil(phi * F), clamped to [1, F].
int decode_cache_equal_width(double phi, int num_contents);

/// Segment widths L_n = chi/F + (1 - chi) * Psi_n / sum(Psi); uniform when the
/// table is degenerate (no counts yet).
std::vector<double> segment_widths(const FrequencyTable& table, int num_contents);

/// f = the segment of the cumulative-width partition containing phi; boundaries
/// belong to the lower segment, matching the ceil convention above. chi = 1 or
/// a degenerate table reduces exactly to the equal-width decode.
int decode_cache_frequency_aware(double phi, const FrequencyTable& table,
                                 int num_contents);

/// Which physical pieces of the system a run models.
struct VariantSpec {
    bool bs_cache = true;
    bool stars_cache = true;
    /// Double-spliced reflect-only surface: amplitude pinned to 1 toward the
    /// half-space each N/2 block serves, no energy splitting, one phase per
    /// element.
    bool ris_surface = false;
};

struct EnvConfig {
    int num_contents = 50;             // F
    double zipf_alpha = 0.8;
    int bs_capacity = 10;              // C_b
    int stars_capacity = 5;            // C_c
    int num_antennas = 4;              // M
    int num_elements = 16;             // N
    double bs_power_cap = 0.1;         // per-antenna cap, W; total cap is M times this
    double controller_power_cap = 0.1; // per-stream cap on Pc, W
    double bandwidth = 1e6;            // B, Hz
    double noise_w = 3.019951720402016e-13;  // sigma^2 across B
    double qos_rate = 1e6;             // R_QoS, bit/s
    double static_share = 0.3;         // chi
    PhaseModel phase = PhaseModel::independent;
    VariantSpec variant;
    bool frequency_aware = false;      // cache codec selector
    /// Coupled model driven by a single continuous agent: append N sign slots
    /// that serialize the mask into the continuous action.
    bool serialized_mask = false;
    FadingParams fading;
    Geometry geometry;
    PowerTariff tariff;
    RewardParams reward;
};

/// Block sizes of the flattened continuous action, in order.
struct ActionLayout {
    int cache_bs = 0;     // C_b slots when the BS caches
    int cache_stars = 0;  // C_c slots when the controller caches
    int beamformer = 0;   // 4M reals (re/im per antenna per user stream)
    int theta_r = 0;      // N phases
    int beta_t = 0;       // N amplitudes, energy-splitting surface only
    int theta_t = 0;      // N phases, independent-phase STARS only
    int pc = 0;           // 2 controller powers when the controller caches
    int mask = 0;         // N sign slots, serialized coupled model only

    int total() const;
    int off_cache_bs() const { return 0; }
    int off_cache_stars() const { return cache_bs; }
    int off_beamformer() const { return cache_bs + cache_stars; }
    int off_theta_r() const { return off_beamformer() + beamformer; }
    int off_beta_t() const { return off_theta_r() + theta_r; }
    int off_theta_t() const { return off_beta_t() + beta_t; }
    int off_pc() const { return off_theta_t() + theta_t; }
    int off_mask() const { return off_pc() + pc; }
};

ActionLayout make_action_layout(const EnvConfig& cfg);

/// Map the beamformer/surface/power blocks of a [-1, 1] action onto feasible
/// decision variables. Phases and amplitudes use the affine midpoint map, Pc
/// uses |a| * cap, and the beamformers are radially projected onto the total
/// BS power cap. For the coupled model the transmission phases come from
/// `mask`; pass nullptr for the independent model and for a reflect-only
/// surface (which reuses the reflection phases).
void decode_continuous_controls(const std::vector<double>& action,
                                const ActionLayout& layout, const EnvConfig& cfg,
                                const CouplingMask* mask, BeamformingDecision& decision,
                                StarsProfile& profile);

/// Scalar slot reward: sum of r_q over users meeting the QoS rate, minus the
/// weighted system power, plus (optionally) the weighted cache hit count.
double compute_reward(double rate_t, double rate_r, double qos_rate, double system_w,
                      int total_hits, const RewardParams& params, bool include_hit_term);

struct StepResult {
    std::vector<double> state;     // next external state
    double reward = 0.0;           // external (hit term included)
    double internal_reward = 0.0;  // hit term excluded
    LinkBudget budget;
    int hits_bs = 0;
    int hits_stars = 0;
    int remote = 0;                // lambda_r
    int replaced = 0;              // lambda_u, both nodes
    int qos_met = 0;               // 0..2
};

/// Outcome of applying an action to the current slot without committing it.
struct EvalResult {
    double reward = 0.0;
    double internal_reward = 0.0;
    LinkBudget budget;
    CacheState bs_cache, stars_cache;  // post-push caches
    int hits_bs = 0, hits_stars = 0, remote = 0, replaced = 0, qos_met = 0;
};

/// The slot-by-slot caching/beamforming decision process. One instance is
/// strictly sequential; run several with independent seeds for parallelism.
class CachingEnv {
  public:
    CachingEnv(const EnvConfig& cfg, uint64_t seed);

    const EnvConfig& config() const { return cfg_; }
    const ActionLayout& layout() const { return layout_; }
    int action_dim() const { return layout_.total(); }
    int state_dim() const;
    int internal_state_dim() const;
    uint64_t mask_actions() const { return uint64_t{1} << cfg_.num_elements; }

    /// Fresh episode: empty caches, re-dropped users, new requests and
    /// channels. The frequency table persists.
    std::vector<double> reset();

    /// Independent model, reflect-only surface, or serialized coupled model
    /// (mask recovered from the sign slots). Throws std::logic_error when the
    /// coupled model needs an explicit mask.
    StepResult step(const std::vector<double>& action);

    /// Coupled model with the mask chosen by a separate discrete agent.
    StepResult step_with_mask(const std::vector<double>& action, const CouplingMask& mask);

    /// Pure evaluation of (action, mask) against the current slot; the
    /// exhaustive mask oracle and the internal reward both come from here.
    EvalResult evaluate(const std::vector<double>& action, const CouplingMask* mask) const;

    /// Internal MDP observation: requests + channels + the continuous action.
    std::vector<double> internal_state(const std::vector<double>& action) const;

    std::vector<double> current_state() const;

    const FrequencyTable& frequency_table() const { return freq_; }
    FrequencyTable& frequency_table() { return freq_; }
    const CacheState& bs_cache() const { return bs_cache_; }
    const CacheState& stars_cache() const { return stars_cache_; }
    const RequestPair& requests() const { return req_; }
    const ChannelSet& channels() const { return ch_; }
    Rng& rng() { return rng_; }

  private:
    StepResult commit(EvalResult& ev);
    void draw_slot();              // next requests + channels
    void append_channel_features(std::vector<double>& out) const;
    void append_cache_block(std::vector<double>& out, const CacheState& c) const;
    CouplingMask mask_from_action(const std::vector<double>& action) const;

    EnvConfig cfg_;
    ActionLayout layout_;
    Catalog catalog_;
    Rng rng_;
    Geometry geo_;
    FrequencyTable freq_;
    CacheState bs_cache_, stars_cache_;
    RequestPair req_;
    ChannelSet ch_;
    double scale_g_ = 1.0, scale_ht_ = 1.0, scale_hr_ = 1.0, scale_hdt_ = 1.0,
           scale_hdr_ = 1.0;
};

}  // namespace starcache
