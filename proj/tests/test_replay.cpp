#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "starcache/replay.hpp"

using namespace starcache;

TEST_CASE("pushes fill the buffer and then recycle the oldest slot") {
    ReplayBuffer<int> buf(3);
    CHECK(buf.capacity() == 3);
    buf.push(10);
    buf.push(11);
    CHECK(buf.size() == 2);
    buf.push(12);
    buf.push(13);  // evicts 10
    CHECK(buf.size() == 3);
    std::set<int> held{buf.at(0), buf.at(1), buf.at(2)};
    CHECK(held == std::set<int>{11, 12, 13});
    buf.push(14);  // evicts 11
    held = {buf.at(0), buf.at(1), buf.at(2)};
    CHECK(held == std::set<int>{12, 13, 14});
}

TEST_CASE("zero capacity is rejected") {
    CHECK_THROWS_AS(ReplayBuffer<int>(0), std::invalid_argument);
}

TEST_CASE("samples are distinct members of the buffer") {
    ReplayBuffer<int> buf(50);
    for (int i = 0; i < 50; ++i) buf.push(i);
    Rng rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const auto batch = buf.sample(16, rng);
        REQUIRE(batch.size() == 16);
        std::set<const int*> ptrs(batch.begin(), batch.end());
        CHECK(ptrs.size() == 16);  // no element twice
        for (const int* p : batch) {
            CHECK(*p >= 0);
            CHECK(*p < 50);
        }
    }
}

TEST_CASE("sampling more than the fill is an error") {
    ReplayBuffer<int> buf(10);
    buf.push(1);
    Rng rng(1);
    CHECK_THROWS_AS(buf.sample(2, rng), std::invalid_argument);
    CHECK_NOTHROW(buf.sample(1, rng));
}

TEST_CASE("sampling is deterministic per rng seed") {
    ReplayBuffer<int> buf(30);
    for (int i = 0; i < 30; ++i) buf.push(i * 7);
    Rng a(9), b(9);
    for (int rep = 0; rep < 20; ++rep) {
        const auto ba = buf.sample(8, a);
        const auto bb = buf.sample(8, b);
        for (size_t i = 0; i < ba.size(); ++i) CHECK(*ba[i] == *bb[i]);
    }
}

TEST_CASE("every element is reachable by sampling") {
    ReplayBuffer<int> buf(12);
    for (int i = 0; i < 12; ++i) buf.push(i);
    Rng rng(5);
    std::set<int> seen;
    for (int rep = 0; rep < 300; ++rep)
        for (const int* p : buf.sample(4, rng)) seen.insert(*p);
    CHECK(seen.size() == 12);
}
