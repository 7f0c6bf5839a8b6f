#include "starcache/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starcache {

std::vector<double> zipf_pmf(int num_contents, double skewness) {
    if (num_contents < 1) throw std::invalid_argument("zipf_pmf: catalog needs at least one content");
    if (skewness < 0.0) throw std::invalid_argument("zipf_pmf: skewness must be >= 0");
    std::vector<double> pmf(num_contents);
    double norm = 0.0;
    for (int f = 1; f <= num_contents; ++f) {
        pmf[f - 1] = std::pow(static_cast<double>(f), -skewness);
        norm += pmf[f - 1];
    }
    for (double& p : pmf) p /= norm;
    return pmf;
}

Catalog make_catalog(int num_contents, double skewness) {
    Catalog cat;
    cat.num_contents = num_contents;
    cat.skewness = skewness;
    cat.pmf = zipf_pmf(num_contents, skewness);
    cat.cdf.resize(num_contents);
    double acc = 0.0;
    for (int f = 0; f < num_contents; ++f) {
        acc += cat.pmf[f];
        cat.cdf[f] = acc;
    }
    cat.cdf.back() = 1.0;
    return cat;
}

int CacheState::ones() const {
    int n = 0;
    for (uint8_t b : incidence) n += b;
    return n;
}

bool CacheState::holds(int content) const {
    return content >= 1 && content <= static_cast<int>(incidence.size()) &&
           incidence[content - 1] != 0;
}

std::vector<int> CacheState::contents() const {
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(incidence.size()); ++f)
        if (incidence[f]) out.push_back(f + 1);
    return out;
}

CacheState make_cache(Node node, int capacity, int num_contents) {
    CacheState c;
    c.node = node;
    c.capacity = capacity;
    c.incidence.assign(num_contents, 0);
    return c;
}

int sample_content(const Catalog& cat, Rng& rng) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cat.cdf.begin(), cat.cdf.end(), u);
    const int idx = static_cast<int>(it - cat.cdf.begin());
    return std::min(idx, cat.num_contents - 1) + 1;
}

RequestPair sample_request_pair(const Catalog& cat, Rng& rng) {
    RequestPair req;
    req.t = sample_content(cat, rng);
    req.r = sample_content(cat, rng);
    return req;
}

CacheUpdate apply_cache_decision(const CacheState& prev, const std::vector<int>& target) {
    const int F = static_cast<int>(prev.incidence.size());
    CacheUpdate up;
    up.state = prev;
    std::fill(up.state.incidence.begin(), up.state.incidence.end(), uint8_t{0});
    for (int f : target) {
        if (f < 1 || f > F) throw std::invalid_argument("apply_cache_decision: content index out of range");
        up.state.incidence[f - 1] = 1;
    }
    if (up.state.ones() > prev.capacity)
        throw std::invalid_argument("apply_cache_decision: target exceeds cache capacity");
    int dist = 0;
    for (int f = 0; f < F; ++f)
        dist += std::abs(static_cast<int>(up.state.incidence[f]) - static_cast<int>(prev.incidence[f]));
    up.replaced = dist;
    return up;
}

ServingDecision lookup_serving(const RequestPair& req, const CacheState& bs,
                               const CacheState& stars) {
    const auto tier_of = [&](int f) {
        if (stars.holds(f)) return ServeTier::STARS;
        if (bs.holds(f)) return ServeTier::BS;
        return ServeTier::REMOTE;
    };
    ServingDecision d;
    d.tier_t = tier_of(req.t);
    d.tier_r = tier_of(req.r);
    for (ServeTier tier : {d.tier_t, d.tier_r}) {
        if (tier == ServeTier::REMOTE) ++d.remote_count;
        if (tier == ServeTier::BS) ++d.hits_bs;
        if (tier == ServeTier::STARS) ++d.hits_stars;
    }
    return d;
}

}  // namespace starcache
