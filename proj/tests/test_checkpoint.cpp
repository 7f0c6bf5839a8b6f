#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "starcache/checkpoint.hpp"

using namespace starcache;

namespace {

const char* kPath = "/tmp/starcache_test_ckpt.bin";

struct Cleanup {
    ~Cleanup() { std::remove(kPath); }
} cleanup_guard;

Td3Agent trained_td3(uint64_t seed) {
    Td3Config cfg;
    cfg.hidden = {8};
    cfg.batch = 4;
    NoiseSchedule noise;
    Td3Agent agent(2, 2, cfg, noise, seed);
    for (int i = 0; i < 16; ++i)
        agent.observe({{0.1, -0.1}, {0.3, 0.4}, {0.2, 0.0}, 0.5, 0});
    for (int i = 0; i < 10; ++i) agent.learn();
    return agent;
}

DqnAgent trained_dqn(uint64_t seed) {
    DqnConfig cfg;
    cfg.hidden = {8};
    cfg.batch = 4;
    DqnAgent agent(3, 4, cfg, seed);
    for (int i = 0; i < 12; ++i) agent.observe({{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, 1, 0.25, 1});
    for (int i = 0; i < 8; ++i) agent.learn();
    agent.on_episode_end();
    agent.on_episode_end();
    return agent;
}

FrequencyTable some_table() {
    FrequencyTable t;
    t.counts = {4, 0, 7, 1};
    t.static_share = 0.3;
    return t;
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::vector<char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("a round trip restores every trainable piece bit-exactly") {
    Td3Agent src = trained_td3(1);
    DqnAgent src_dqn = trained_dqn(2);
    const FrequencyTable freq = some_table();
    save_checkpoint(kPath, src, &src_dqn, freq, 42);

    Td3Agent dst = trained_td3(99);  // same shapes, different weights
    DqnAgent dst_dqn = trained_dqn(98);
    FrequencyTable freq2;
    freq2.counts.assign(4, 0);
    const int64_t episode = load_checkpoint(kPath, dst, &dst_dqn, freq2);

    CHECK(episode == 42);
    CHECK(flatten_params(dst.actor) == flatten_params(src.actor));
    CHECK(flatten_params(dst.critic1) == flatten_params(src.critic1));
    CHECK(flatten_params(dst.critic2) == flatten_params(src.critic2));
    CHECK(flatten_params(dst.target_actor) == flatten_params(src.target_actor));
    CHECK(flatten_params(dst.target_critic1) == flatten_params(src.target_critic1));
    CHECK(flatten_params(dst.target_critic2) == flatten_params(src.target_critic2));
    CHECK(dst.opt_actor.step == src.opt_actor.step);
    CHECK(dst.opt_critic1.m_w == src.opt_critic1.m_w);
    CHECK(dst.opt_critic1.v_b == src.opt_critic1.v_b);
    CHECK(dst.learn_steps() == src.learn_steps());
    CHECK(flatten_params(dst_dqn.qnet) == flatten_params(src_dqn.qnet));
    CHECK(flatten_params(dst_dqn.target) == flatten_params(src_dqn.target));
    CHECK(dst_dqn.episodes() == src_dqn.episodes());
    CHECK(freq2.counts == freq.counts);

    // the restored policy acts identically
    const std::vector<double> s{0.4, -0.2};
    CHECK(dst.act_greedy(s) == src.act_greedy(s));
}

TEST_CASE("saving twice produces identical bytes") {
    Td3Agent src = trained_td3(5);
    const FrequencyTable freq = some_table();
    save_checkpoint(kPath, src, nullptr, freq, 7);
    const std::vector<char> first = slurp(kPath);
    save_checkpoint(kPath, src, nullptr, freq, 7);
    CHECK(slurp(kPath) == first);
    CHECK_FALSE(first.empty());
}

TEST_CASE("a continuous-only checkpoint refuses a dqn slot and vice versa") {
    Td3Agent src = trained_td3(3);
    const FrequencyTable freq = some_table();
    save_checkpoint(kPath, src, nullptr, freq, 1);

    Td3Agent dst = trained_td3(4);
    DqnAgent dqn = trained_dqn(6);
    FrequencyTable f2 = freq;
    CHECK_THROWS_AS(load_checkpoint(kPath, dst, &dqn, f2), CheckpointError);

    DqnAgent src_dqn = trained_dqn(7);
    save_checkpoint(kPath, src, &src_dqn, freq, 1);
    CHECK_THROWS_AS(load_checkpoint(kPath, dst, nullptr, f2), CheckpointError);
}

TEST_CASE("shape mismatches are rejected before anything is overwritten") {
    Td3Agent src = trained_td3(8);
    const FrequencyTable freq = some_table();
    save_checkpoint(kPath, src, nullptr, freq, 3);

    Td3Config other;
    other.hidden = {16};  // different net shape
    NoiseSchedule noise;
    Td3Agent dst(2, 2, other, noise, 1);
    const std::vector<double> before = flatten_params(dst.actor);
    FrequencyTable f2 = freq;
    CHECK_THROWS_AS(load_checkpoint(kPath, dst, nullptr, f2), CheckpointError);
    CHECK(flatten_params(dst.actor) == before);
}

TEST_CASE("corrupted files raise tagged errors") {
    Td3Agent src = trained_td3(9);
    const FrequencyTable freq = some_table();
    save_checkpoint(kPath, src, nullptr, freq, 2);
    const std::vector<char> good = slurp(kPath);

    // wrong magic
    std::vector<char> junk = good;
    junk[0] = 'X';
    spit(kPath, junk);
    Td3Agent dst = trained_td3(10);
    FrequencyTable f2 = freq;
    try {
        load_checkpoint(kPath, dst, nullptr, f2);
        FAIL("expected CheckpointError");
    } catch (const CheckpointError& e) {
        CHECK(std::string(e.what()).find("not a checkpoint file") != std::string::npos);
    }

    // newer container version
    junk = good;
    junk[7] = static_cast<char>(junk[7] + 1);
    spit(kPath, junk);
    try {
        load_checkpoint(kPath, dst, nullptr, f2);
        FAIL("expected CheckpointError");
    } catch (const CheckpointError& e) {
        CHECK(std::string(e.what()).find("incompatible checkpoint version") !=
              std::string::npos);
    }

    // truncation
    junk = std::vector<char>(good.begin(), good.begin() + good.size() / 2);
    spit(kPath, junk);
    CHECK_THROWS_AS(load_checkpoint(kPath, dst, nullptr, f2), CheckpointError);

    // trailing garbage
    junk = good;
    junk.push_back(0);
    spit(kPath, junk);
    CHECK_THROWS_AS(load_checkpoint(kPath, dst, nullptr, f2), CheckpointError);

    CHECK_THROWS_AS(load_checkpoint("/tmp/starcache_ckpt_missing.bin", dst, nullptr, f2),
                    CheckpointError);
}
