#include "starcache/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace starcache {

namespace {

constexpr char kMagic[8] = {'S', 'T', 'C', 'A', 'C', 'H', 'E', '1'};

struct Writer {
    std::string buf;

    void raw(const void* p, size_t n) { buf.append(static_cast<const char*>(p), n); }
    void u8(uint8_t v) { raw(&v, 1); }
    void i64(int64_t v) { raw(&v, 8); }
    void u64(uint64_t v) { raw(&v, 8); }
    void f64(double v) { raw(&v, 8); }
    void f64s(const std::vector<double>& v) { raw(v.data(), v.size() * 8); }
};

struct Reader {
    const std::string& buf;
    size_t pos = 0;

    void raw(void* p, size_t n) {
        if (pos + n > buf.size()) throw CheckpointError("checkpoint truncated");
        std::memcpy(p, buf.data() + pos, n);
        pos += n;
    }
    uint8_t u8() { uint8_t v; raw(&v, 1); return v; }
    int64_t i64() { int64_t v; raw(&v, 8); return v; }
    uint64_t u64() { uint64_t v; raw(&v, 8); return v; }
    double f64() { double v; raw(&v, 8); return v; }
    void f64s(std::vector<double>& v) { raw(v.data(), v.size() * 8); }
};

void put_mlp(Writer& w, const Mlp& net) {
    w.u64(net.sizes.size());
    for (int s : net.sizes) w.i64(s);
    w.u8(net.output == Mlp::Output::tanh ? 1 : 0);
    for (int l = 0; l < net.num_layers(); ++l) {
        w.f64s(net.w[l]);
        w.f64s(net.b[l]);
    }
}

// Fills a net that already has the expected architecture; the stored shape
// must agree with it.
void get_mlp(Reader& r, Mlp& net) {
    const uint64_t nsizes = r.u64();
    if (nsizes != net.sizes.size()) throw CheckpointError("network shape mismatch");
    for (size_t i = 0; i < nsizes; ++i)
        if (r.i64() != net.sizes[i]) throw CheckpointError("network shape mismatch");
    const uint8_t tag = r.u8();
    if (tag != (net.output == Mlp::Output::tanh ? 1 : 0))
        throw CheckpointError("network head mismatch");
    for (int l = 0; l < net.num_layers(); ++l) {
        r.f64s(net.w[l]);
        r.f64s(net.b[l]);
    }
}

void put_adam(Writer& w, const AdamState& s) {
    w.i64(s.step);
    w.f64(s.beta1);
    w.f64(s.beta2);
    w.f64(s.eps);
    for (size_t l = 0; l < s.m_w.size(); ++l) {
        w.f64s(s.m_w[l]);
        w.f64s(s.v_w[l]);
        w.f64s(s.m_b[l]);
        w.f64s(s.v_b[l]);
    }
}

void get_adam(Reader& r, AdamState& s) {
    s.step = r.i64();
    s.beta1 = r.f64();
    s.beta2 = r.f64();
    s.eps = r.f64();
    for (size_t l = 0; l < s.m_w.size(); ++l) {
        r.f64s(s.m_w[l]);
        r.f64s(s.v_w[l]);
        r.f64s(s.m_b[l]);
        r.f64s(s.v_b[l]);
    }
}

}  // namespace

void save_checkpoint(const std::string& path, const Td3Agent& td3, const DqnAgent* dqn,
                     const FrequencyTable& freq, int64_t episode) {
    Writer w;
    w.raw(kMagic, sizeof(kMagic));
    w.u8(dqn != nullptr ? 1 : 0);
    w.i64(episode);
    w.f64(td3.noise().start);
    w.f64(td3.noise().end);
    w.i64(td3.noise().max_episode);
    w.u64(freq.counts.size());
    for (uint64_t c : freq.counts) w.u64(c);
    w.f64(freq.static_share);
    w.i64(td3.learn_steps_);
    put_mlp(w, td3.actor);
    put_mlp(w, td3.critic1);
    put_mlp(w, td3.critic2);
    put_mlp(w, td3.target_actor);
    put_mlp(w, td3.target_critic1);
    put_mlp(w, td3.target_critic2);
    put_adam(w, td3.opt_actor);
    put_adam(w, td3.opt_critic1);
    put_adam(w, td3.opt_critic2);
    if (dqn != nullptr) {
        w.i64(dqn->episodes_);
        put_mlp(w, dqn->qnet);
        put_mlp(w, dqn->target);
        put_adam(w, dqn->opt);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path);
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    if (!out) throw CheckpointError("short write on checkpoint: " + path);
}

int64_t load_checkpoint(const std::string& path, Td3Agent& td3, DqnAgent* dqn,
                        FrequencyTable& freq) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r{buf};

    char magic[8];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, 7) != 0) throw CheckpointError("not a checkpoint file");
    if (magic[7] != kMagic[7]) throw CheckpointError("incompatible checkpoint version");

    const uint8_t has_dqn = r.u8();
    if ((has_dqn != 0) != (dqn != nullptr))
        throw CheckpointError("checkpoint agent set does not match the run");

    const int64_t episode = r.i64();
    NoiseSchedule sched;
    sched.start = r.f64();
    sched.end = r.f64();
    sched.max_episode = static_cast<int>(r.i64());

    FrequencyTable ft;
    const uint64_t flen = r.u64();
    if (flen != freq.counts.size()) throw CheckpointError("frequency table length mismatch");
    ft.counts.resize(flen);
    for (uint64_t i = 0; i < flen; ++i) ft.counts[i] = r.u64();
    ft.static_share = r.f64();

    // Parse into copies first so nothing is half-applied on error.
    const int64_t learn_steps = r.i64();
    Mlp actor = td3.actor, c1 = td3.critic1, c2 = td3.critic2;
    Mlp t_actor = td3.target_actor, t_c1 = td3.target_critic1, t_c2 = td3.target_critic2;
    get_mlp(r, actor);
    get_mlp(r, c1);
    get_mlp(r, c2);
    get_mlp(r, t_actor);
    get_mlp(r, t_c1);
    get_mlp(r, t_c2);
    AdamState oa = td3.opt_actor, oc1 = td3.opt_critic1, oc2 = td3.opt_critic2;
    get_adam(r, oa);
    get_adam(r, oc1);
    get_adam(r, oc2);

    int64_t dqn_episodes = 0;
    Mlp qnet, qtarget;
    AdamState qopt;
    if (dqn != nullptr) {
        dqn_episodes = r.i64();
        qnet = dqn->qnet;
        qtarget = dqn->target;
        qopt = dqn->opt;
        get_mlp(r, qnet);
        get_mlp(r, qtarget);
        get_adam(r, qopt);
    }
    if (r.pos != buf.size()) throw CheckpointError("trailing bytes in checkpoint");

    td3.learn_steps_ = learn_steps;
    td3.actor = std::move(actor);
    td3.critic1 = std::move(c1);
    td3.critic2 = std::move(c2);
    td3.target_actor = std::move(t_actor);
    td3.target_critic1 = std::move(t_c1);
    td3.target_critic2 = std::move(t_c2);
    td3.opt_actor = std::move(oa);
    td3.opt_critic1 = std::move(oc1);
    td3.opt_critic2 = std::move(oc2);
    if (dqn != nullptr) {
        dqn->episodes_ = dqn_episodes;
        dqn->qnet = std::move(qnet);
        dqn->target = std::move(qtarget);
        dqn->opt = std::move(qopt);
    }
    freq = std::move(ft);
    return episode;
}

}  // namespace starcache
