#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "starcache/rng.hpp"

namespace starcache {

/// Fixed-capacity ring of transitions with uniform without-replacement batch
/// sampling (Floyd's subset algorithm, so a draw costs O(batch) rng calls).
template <typename Record>
class ReplayBuffer {
  public:
    explicit ReplayBuffer(size_t capacity) : cap_(capacity) {
        if (capacity == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
    }

    void push(Record r) {
        if (store_.size() < cap_) {
            store_.push_back(std::move(r));
        } else {
            store_[head_] = std::move(r);
            head_ = (head_ + 1) % cap_;
        }
    }

    size_t size() const { return store_.size(); }
    size_t capacity() const { return cap_; }
    const Record& at(size_t i) const { return store_[i]; }

    std::vector<const Record*> sample(size_t batch, Rng& rng) const {
        if (batch > store_.size())
            throw std::invalid_argument("ReplayBuffer::sample: batch exceeds size");
        std::set<size_t> picked;
        for (size_t j = store_.size() - batch; j < store_.size(); ++j) {
            const size_t t = rng.uniform_index(j + 1);
            if (!picked.insert(t).second) picked.insert(j);
        }
        std::vector<const Record*> out;
        out.reserve(batch);
        for (size_t i : picked) out.push_back(&store_[i]);
        return out;
    }

  private:
    size_t cap_;
    size_t head_ = 0;
    std::vector<Record> store_;
};

}  // namespace starcache
