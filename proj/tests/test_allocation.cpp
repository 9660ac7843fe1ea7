#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fairsched/allocation.hpp"

using namespace fairsched;
namespace ft = fairsched::testing;

namespace {

// The deterministic joint-minimum PS-DSF outcome on the reference instance.
AllocationState psdsf_final_state() {
    AllocationState st(ft::s0());
    st.apply_increment(0, 0, 19);
    st.apply_increment(1, 0, 2);
    st.apply_increment(1, 1, 20);
    return st;
}

}  // namespace

TEST_CASE("fits respects capacity and placement constraints") {
    Scenario s = ft::s0();
    s.frameworks[0].allowed_servers = {1};
    AllocationState st(s);
    CHECK(st.fits(0, 0));
    CHECK_FALSE(st.fits(0, 1));  // not allowed
    CHECK(st.fits(0, 0, 20));    // 20*(5,1) = (100,20) fits exactly
    CHECK_FALSE(st.fits(0, 0, 21));
    CHECK_FALSE(st.fits(0, 0, 0));  // nonpositive count never fits
}

TEST_CASE("apply_increment maintains residuals and rejects overbooking") {
    AllocationState st(ft::s0());
    st.apply_increment(0, 0, 10);
    CHECK(st.x(0, 0) == 10);
    CHECK(st.residual(0)[0] == 50);
    CHECK(st.residual(0)[1] == 20);
    CHECK_THROWS_AS(st.apply_increment(0, 0, 11), std::invalid_argument);
    CHECK_THROWS_AS(st.apply_increment(0, 0, -1), std::invalid_argument);
    Scenario s = ft::s0();
    s.frameworks[1].allowed_servers = {2};
    AllocationState st2(s);
    CHECK_THROWS_AS(st2.apply_increment(1, 0, 1), std::invalid_argument);
}

TEST_CASE("fully booked resource sets") {
    AllocationState st = psdsf_final_state();
    CHECK(st.fully_booked(1, 1e-9) == std::vector<int>{1});  // usage (20,100) on server 2
    CHECK(st.fully_booked(0, 1e-9).empty());                 // residual (3,1) on server 1
    AllocationState empty(ft::s0());
    CHECK(empty.fully_booked(0, 1e-9).empty());
    CHECK(empty.fully_booked(1, 1e-9).empty());
}

TEST_CASE("efficiency is the priority-weighted task total") {
    AllocationState st = psdsf_final_state();
    CHECK(st.efficiency() == 41);
    AllocationState empty(ft::s0());
    CHECK(empty.efficiency() == 0);

    Scenario weighted = ft::s0();
    weighted.frameworks[0].priority = 2.0;
    AllocationState w(weighted);
    w.apply_increment(0, 0, 3);
    w.apply_increment(1, 1, 4);
    CHECK(w.efficiency() == 2.0 * 3 + 4);
}

TEST_CASE("capacity safety across random increment sequences") {
    auto corpus = ft::random_corpus(5, 99);
    SplitMix64 rng(7);
    for (const Scenario& s : corpus) {
        AllocationState st(s);
        for (int step = 0; step < 20000; ++step) {
            int n = static_cast<int>(rng.next_below(s.num_frameworks()));
            int i = static_cast<int>(rng.next_below(s.num_servers()));
            if (st.fits(n, i)) st.apply_increment(n, i, 1);
        }
        for (int i = 0; i < s.num_servers(); ++i)
            for (int r = 0; r < s.num_resources(); ++r) {
                double used = 0.0;
                for (int n = 0; n < s.num_frameworks(); ++n)
                    used += st.x(n, i) * s.demand(n, r);
                REQUIRE(used <= s.capacity(i, r) + 1e-9);
            }
    }
}

TEST_CASE("incremental residual matches recomputation after many increments") {
    Scenario s = ft::random_corpus(1, 5)[0];
    AllocationState st(s);
    SplitMix64 rng(11);
    int applied = 0;
    for (int step = 0; step < 100000 && applied < 100000; ++step) {
        int n = static_cast<int>(rng.next_below(s.num_frameworks()));
        int i = static_cast<int>(rng.next_below(s.num_servers()));
        double count = 1.0 + rng.next_double();  // fractional increments too
        if (st.fits(n, i, count)) {
            st.apply_increment(n, i, count);
            ++applied;
        }
    }
    auto recomputed = st.recompute_residual();
    for (int i = 0; i < s.num_servers(); ++i)
        for (int r = 0; r < s.num_resources(); ++r) {
            double scale = std::max(1.0, s.capacity(i, r));
            REQUIRE(std::abs(st.residual(i)[r] - recomputed[i][r]) <= 1e-9 * scale);
        }
}

TEST_CASE("framework departure releases all of its tasks") {
    AllocationState st = psdsf_final_state();
    st.remove_framework(2);
    CHECK(st.residual(0) == ResourceVector{5, 11});
    CHECK(st.residual(1) == ResourceVector{30, 100});
    REQUIRE(st.scenario().num_frameworks() == 1);
    CHECK(st.x(0, 0) == 19);  // survivor untouched
    CHECK_THROWS_AS(st.remove_framework(2), std::invalid_argument);
}

TEST_CASE("framework arrival starts empty and duplicate ids are rejected") {
    AllocationState st = psdsf_final_state();
    FrameworkSpec fw;
    fw.id = 3;
    fw.demand = {1, 1};
    st.add_framework(fw);
    REQUIRE(st.framework_index(3) == 2);
    CHECK(st.x(2, 0) == 0);
    CHECK(st.x(2, 1) == 0);
    CHECK_THROWS_AS(st.add_framework(fw), std::invalid_argument);

    // arrival then immediate departure restores the original shape
    st.remove_framework(3);
    CHECK(st.framework_index(3) == -1);
    CHECK(st.efficiency() == 41);
}
