#include <doctest.h>

#include <cmath>
#include <set>

#include "dose/rng.hpp"

using dose::Rng;

TEST_CASE("same seed gives identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("child streams are independent of draw order") {
    Rng a(7);
    (void)a.next_u64();
    (void)a.next_u64();
    Rng b(7);
    // a has advanced, b has not; children must still agree.
    CHECK(a.child("fx").next_u64() == b.child("fx").next_u64());
    CHECK(a.child("fx", 3).next_u64() == b.child("fx", 3).next_u64());
    CHECK(a.child("fx").next_u64() != a.child("pattern").next_u64());
    CHECK(a.child("fx", 0).next_u64() != a.child("fx", 1).next_u64());
}

TEST_CASE("uniform_int stays in bounds and covers the range") {
    Rng r(123);
    std::set<int64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const int64_t v = r.uniform_int(2, 4);
        CHECK(v >= 2);
        CHECK(v <= 4);
        seen.insert(v);
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("uniform is in [0,1)") {
    Rng r(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sample_without_replacement gives sorted distinct values") {
    Rng r(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = r.sample_without_replacement(1920, 18);
        CHECK(v.size() == 18);
        for (size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
        CHECK(v.front() >= 0);
        CHECK(v.back() < 1920);
    }
}
