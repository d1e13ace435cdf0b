#include <gtest/gtest.h>

#include <random>

#include "gen.hpp"
#include "oracles.hpp"
#include "revnets/net.hpp"
#include "support.hpp"

using namespace revnets;
using support::ids;

TEST(TokenGame, InhibitorBlocksUntilProducerFires) {
    Ipt n = support::net("n_r");
    EXPECT_TRUE(enabled(n, n.marking, ids({"a"})));
    EXPECT_FALSE(enabled(n, n.marking, ids({"b"})));
    EXPECT_FALSE(enabled(n, n.marking, ids({"a", "b"})));
    EXPECT_TRUE(enabled(n, n.marking, ids({"a", "c"})));
    Marking m = fire(n, n.marking, ids({"a"}));
    EXPECT_EQ(m, ids({"s2", "s3", "s4"}));
    EXPECT_TRUE(enabled(n, m, ids({"b"})));
}

TEST(TokenGame, StepMayNotProduceIntoAnInhibitorOfAnotherMember) {
    Ipt n = support::net("n_r");
    Marking m = ids({"s2", "s3", "s4"});
    EXPECT_TRUE(enabled(n, m, ids({"b"})));
    EXPECT_TRUE(enabled(n, m, ids({"c"})));
    EXPECT_FALSE(enabled(n, m, ids({"b", "c"})));
}

TEST(TokenGame, FireSequenceNamesFailingPosition) {
    Ipt n = support::net("n_r");
    EXPECT_EQ(fire_sequence(n, n.marking, {"a", "b"}), ids({"s3", "s4", "s5"}));
    try {
        (void)fire_sequence(n, n.marking, {"a", "c", "b"});
        FAIL() << "expected failure";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW((void)fire_sequence(n, n.marking, {"zz"}), Error);
}

TEST(TokenGame, UnsafeFiringIsReported) {
    Ipt n{{"s1", "s2"}, {"t"}, {{"s1", "t"}, {"t", "s2"}}, {}, {"s1", "s2"}};
    EXPECT_THROW((void)fire(n, n.marking, ids({"t"})), UnsafeNet);
    EXPECT_THROW((void)reachable_markings(n), UnsafeNet);
    EXPECT_FALSE(is_safe(n));
}

TEST(TokenGame, WellFormednessRejectsDanglingArcs) {
    Ipt n{{"s"}, {"t"}, {{"s", "t"}, {"t", "x"}}, {}, {"s"}};
    EXPECT_THROW(check_well_formed(n), Error);
    Ipt m{{"s"}, {"t"}, {}, {}, {"s"}};
    EXPECT_THROW(check_well_formed(m), Error);  // empty preset
}

TEST(Reachability, FourMarkingsOfTheNoncommutingNet) {
    Ipt n = support::net("n_4");
    std::set<Marking> expected{ids({"s1", "s2", "s3"}), ids({"s1", "s3", "s5"}), ids({"s1", "s2", "s6"}),
                               ids({"s3", "s4", "s5"})};
    EXPECT_EQ(reachable_markings(n).set(), expected);
}

TEST(Reachability, BoundIsEnforced) {
    Ipt n = support::net("n_4");
    EXPECT_THROW((void)reachable_markings(n, 2), BoundExceeded);
    EXPECT_NO_THROW((void)reachable_markings(n, 4));
}

TEST(Reachability, EmptyNet) {
    Ipt n;
    auto g = reachable_markings(n);
    EXPECT_EQ(g.markings.size(), 1u);
    EXPECT_TRUE(g.edges.empty());
}

TEST(TokenGameProperty, EnablingAndReachabilityMatchOracle) {
    std::mt19937 rng(11);
    for (int round = 0; round < 120; ++round) {
        Ipt n = gen::pacn(rng, 5, 0.15);
        auto reach = oracle::reach(n);
        EXPECT_EQ(reachable_markings(n).set(), reach);
        for (const auto& m : reach)
            for (const auto& step : oracle::subsets(n.transitions)) {
                if (step.empty()) continue;
                bool want = oracle::enabled(n, m, step);
                ASSERT_EQ(enabled(n, m, step), want) << show(m) << " " << show(step);
                if (want) {
                    IdSet out;
                    ASSERT_TRUE(oracle::fire(n, m, step, out));
                    EXPECT_EQ(fire(n, m, step), out);
                }
            }
    }
}

// A step is enabled iff some ordering of it fires one transition at a time.
TEST(TokenGameProperty, StepsLinearize) {
    std::mt19937 rng(12);
    for (int round = 0; round < 120; ++round) {
        Ipt n = gen::pacn(rng, 5, 0.15);
        for (const auto& m : oracle::reach(n))
            for (const auto& step : oracle::subsets(n.transitions)) {
                if (step.size() < 2 || !enabled(n, m, step)) continue;
                Marking target = fire(n, m, step);
                std::vector<Id> order(step.begin(), step.end());
                bool found = false;
                do {
                    try {
                        found = fire_sequence(n, m, order) == target;
                    } catch (const Error&) {
                    }
                } while (!found && std::next_permutation(order.begin(), order.end()));
                EXPECT_TRUE(found) << show(m) << " " << show(step);
            }
    }
}

TEST(States, MatchOracleOnRandomNets) {
    std::mt19937 rng(13);
    for (int round = 0; round < 80; ++round) {
        Ipt n = gen::pacn(rng, 5, 0.15);
        EXPECT_EQ(states(n), oracle::states(n));
    }
}
