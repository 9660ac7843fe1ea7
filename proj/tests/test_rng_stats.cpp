#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "fairsched/rng.hpp"
#include "fairsched/stats.hpp"

using namespace fairsched;

TEST_CASE("generator is deterministic and seed-sensitive") {
    SplitMix64 a(42), b(42), c(43);
    for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
    bool differs = false;
    SplitMix64 a2(42);
    for (int k = 0; k < 100; ++k) differs |= (a2.next() != c.next());
    CHECK(differs);
}

TEST_CASE("known first outputs pin the algorithm") {
    // Frozen from this implementation; any change to the generator or the
    // mixing constants breaks run replays and must show up here.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("bounded draws stay in range and doubles stay in the unit interval") {
    SplitMix64 rng(7);
    for (int k = 0; k < 10000; ++k) {
        CHECK(rng.next_below(13) < 13);
        double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
}

TEST_CASE("shuffle produces permutations and covers all orders") {
    SplitMix64 rng(5);
    std::vector<int> counts(6, 0);  // 3! orders
    for (int k = 0; k < 6000; ++k) {
        std::vector<int> v{0, 1, 2};
        shuffle(v, rng);
        std::vector<int> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(sorted == std::vector<int>{0, 1, 2});
        counts[v[0] * 2 + (v[1] > v[2] ? 1 : 0)]++;
    }
    for (int c : counts) CHECK(c > 800);  // roughly uniform
}

TEST_CASE("round-robin offers cover every server once per round") {
    RoundRobinOffers offers(4, SplitMix64(9));
    for (int round = 0; round < 50; ++round) {
        std::vector<int> seen;
        for (int k = 0; k < 4; ++k) seen.push_back(offers.next_offer());
        std::sort(seen.begin(), seen.end());
        REQUIRE(seen == std::vector<int>{0, 1, 2, 3});
    }
}

TEST_CASE("summary statistics") {
    std::vector<double> v{0.0, 2.0};
    Summary s = summarize(v);
    CHECK(s.mean == 1.0);
    CHECK(s.stddev == Catch::Approx(std::sqrt(2.0)));
    CHECK(s.ci_low == Catch::Approx(1.0 - 2.0 * std::sqrt(2.0) / std::sqrt(2.0)));
    CHECK(s.ci_high == Catch::Approx(1.0 + 2.0 * std::sqrt(2.0) / std::sqrt(2.0)));

    std::vector<double> constant(50, 3.25);
    Summary c = summarize(constant);
    CHECK(c.stddev == 0.0);
    CHECK(c.ci_low == 3.25);
    CHECK(c.ci_high == 3.25);

    std::vector<double> one{1.0};
    CHECK_THROWS_AS(summarize(one), std::invalid_argument);
}

TEST_CASE("two-sigma confidence interval convention") {
    // mean 6.5, std 0.46, n = 200 gives the interval (6.43, 6.57) to 2 dp
    std::vector<double> samples(200, 6.5);
    for (int k = 0; k < 100; ++k) {
        samples[k] += 0.46 * std::sqrt(199.0 / 200.0);
        samples[k + 100] -= 0.46 * std::sqrt(199.0 / 200.0);
    }
    Summary s = summarize(samples);
    CHECK(s.mean == Catch::Approx(6.5));
    CHECK(s.stddev == Catch::Approx(0.46).epsilon(1e-6));
    CHECK(s.ci_low == Catch::Approx(6.43).margin(0.006));
    CHECK(s.ci_high == Catch::Approx(6.57).margin(0.006));
}
