#pragma once

#include <cstdint>
#include <vector>

#include "starcache/rng.hpp"

namespace starcache {

/// Content catalog with Zipf popularity. Contents are 1-based and rank-ordered:
/// content 1 is the most popular.
struct Catalog {
    int num_contents = 0;           // F
    double skewness = 0.0;          // alpha
    std::vector<double> pmf;        // length F, nonincreasing, sums to 1
    std::vector<double> cdf;        // cumulative pmf, cdf.back() == 1
};

/// p_f = f^-alpha / sum_chi chi^-alpha. Throws std::invalid_argument for F < 1
/// or alpha < 0.
std::vector<double> zipf_pmf(int num_contents, double skewness);

Catalog make_catalog(int num_contents, double skewness);

enum class Node { BS, STARS };

/// Binary incidence vector over the catalog with a capacity bound.
struct CacheState {
    Node node = Node::BS;
    int capacity = 0;
    std::vector<uint8_t> incidence;  // length F, entries 0/1

    int ones() const;
    bool holds(int content) const;            // content is 1-based
    std::vector<int> contents() const;        // cached indices, ascending
};

CacheState make_cache(Node node, int capacity, int num_contents);

/// One slot's pair of user requests (T-user, R-user), 1-based indices.
struct RequestPair {
    int t = 1;
    int r = 1;
};

/// Push/backhaul cost per unit content, in watts.
struct PowerTariff {
    double push_w = 0.05;      // P_u
    double backhaul_w = 0.2;   // P_bh
};

int sample_content(const Catalog& cat, Rng& rng);
RequestPair sample_request_pair(const Catalog& cat, Rng& rng);

struct CacheUpdate {
    CacheState state;
    int replaced;  // elementwise L1 distance |c_t - c_{t-1}|; a swap counts 2
};

/// Replace the cache contents with `target` (1-based indices; duplicates
/// collapse). Throws std::invalid_argument if an index is out of range or the
/// collapsed target exceeds capacity.
CacheUpdate apply_cache_decision(const CacheState& prev, const std::vector<int>& target);

enum class ServeTier { STARS, BS, REMOTE };

struct ServingDecision {
    ServeTier tier_t = ServeTier::REMOTE;
    ServeTier tier_r = ServeTier::REMOTE;
    int remote_count = 0;   // lambda_r
    int hits_bs = 0;        // requests served from the BS cache
    int hits_stars = 0;     // requests served from the STARS cache
};

/// STARS cache wins over the BS cache; anything cached nowhere is remote.
ServingDecision lookup_serving(const RequestPair& req, const CacheState& bs,
                               const CacheState& stars);

}  // namespace starcache
