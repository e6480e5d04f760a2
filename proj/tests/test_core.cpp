#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tsmr/errors.hpp"

using namespace tsmr;
using namespace tsmr::testing;

TEST_CASE("tally on the three-ballot example") {
    Election e = example1();
    PairwiseTally t = tally(e);
    // per-vote pair scan over the three ballots
    CHECK(t.at(0, 1) == 2); // a before b
    CHECK(t.at(2, 0) == 2); // c before a
    CHECK(t.at(0, 3) == 2); // a before d
    CHECK(t.at(1, 2) == 2);
    CHECK(t.at(1, 3) == 2);
    CHECK(t.at(3, 2) == 2);
    for (int x = 0; x < 4; ++x) {
        CHECK(t.at(x, x) == 0);
        for (int y = 0; y < 4; ++y)
            if (x != y) CHECK(t.at(x, y) + t.at(y, x) == 3);
    }
}

TEST_CASE("tally trivia") {
    Election empty = make_election("a b", {});
    PairwiseTally t0 = tally(empty);
    CHECK(t0.n == 0);
    CHECK(t0.at(0, 1) == 0);
    CHECK(t0.at(1, 0) == 0);

    Election one = make_election("a b c", {"a b c"});
    PairwiseTally t1 = tally(one);
    CHECK(t1.at(0, 1) == 1);
    CHECK(t1.at(0, 2) == 1);
    CHECK(t1.at(1, 2) == 1);
    CHECK(t1.at(1, 0) == 0);
    CHECK(t1.at(2, 0) == 0);
    CHECK(t1.at(2, 1) == 0);
}

TEST_CASE("majority graph of the example") {
    MajorityGraph g = majority_graph(example1());
    std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 0}, {3, 2}};
    CHECK(g.arcs() == expected);
}

TEST_CASE("majority graph ties and transitive tournament") {
    Election tie = make_election("a b", {"a b", "b a"});
    CHECK(majority_graph(tie).arcs().empty());

    Election chain = make_election("a b c", {"a b c"});
    MajorityGraph g = majority_graph(chain);
    std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(g.arcs() == expected);
}

TEST_CASE("majority graph is oriented and irreflexive on random elections") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + static_cast<int>(rng() % 5);
        int n = static_cast<int>(rng() % 9);
        MajorityGraph g = majority_graph(random_election(rng, m, n));
        for (int a = 0; a < m; ++a) {
            CHECK(!g.has_arc(a, a));
            for (int b = 0; b < m; ++b)
                if (g.has_arc(a, b)) CHECK(!g.has_arc(b, a));
        }
    }
}

TEST_CASE("restrict keeps ballot order and remaps ids") {
    Election e = example1();
    Restriction r = restrict(e, {0, 2}); // {a, c}
    CHECK(r.election.labels == std::vector<std::string>{"a", "c"});
    CHECK(r.kept == std::vector<int>{0, 2});
    REQUIRE(r.election.votes.size() == 3);
    CHECK(r.election.votes[0].ranking == std::vector<int>{1, 0}); // c a
    CHECK(r.election.votes[1].ranking == std::vector<int>{1, 0}); // c a
    CHECK(r.election.votes[2].ranking == std::vector<int>{0, 1}); // a c

    Restriction full = restrict(e, {0, 1, 2, 3});
    CHECK(full.election == e);

    CHECK_THROWS_AS(restrict(e, {}), precondition_error);
}

TEST_CASE("restrict composes like intersection") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 3 + static_cast<int>(rng() % 4);
        Election e = random_election(rng, m, 4);
        std::vector<int> k1, k2, inter;
        for (int c = 0; c < m; ++c) {
            bool in1 = rng() % 2 == 0, in2 = rng() % 2 == 0;
            if (in1) k1.push_back(c);
            if (in1 && in2) k2.push_back(static_cast<int>(k1.size()) - 1); // new id in restrict(e,k1)
            if (in1 && in2) inter.push_back(c);
        }
        if (k1.empty() || k2.empty() || inter.empty()) continue;
        Election two_step = restrict(restrict(e, k1).election, k2).election;
        Election direct = restrict(e, inter).election;
        CHECK(two_step == direct);
    }
}

TEST_CASE("restrict_agenda") {
    Election e = make_election("p b1 b2 r1", {});
    Agenda a = make_agenda(e, "p b1 b2 r1");
    Agenda r = restrict_agenda(a, {0, 3});
    CHECK(r.order == std::vector<int>{0, 1}); // (p, r1) in new ids
}

TEST_CASE("forward graph of the example") {
    Election e = example1();
    MajorityGraph g = majority_graph(e);

    MajorityGraph f1 = forward_graph(g, make_agenda(e, "a b c d"));
    std::vector<std::pair<int, int>> expected1 = {{0, 1}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(f1.arcs() == expected1);

    MajorityGraph f2 = forward_graph(g, make_agenda(e, "d c b a"));
    std::vector<std::pair<int, int>> expected2 = {{2, 0}, {3, 2}};
    CHECK(f2.arcs() == expected2);

    MajorityGraph empty(4);
    CHECK(forward_graph(empty, make_agenda(e, "a b c d")).arcs().empty());

    MajorityGraph wrong(3);
    CHECK_THROWS_AS(forward_graph(wrong, make_agenda(e, "a b c d")), precondition_error);
}

TEST_CASE("partial order closure and cycles") {
    PartialOrder po(3);
    po.set(0, 1);
    po.set(1, 2);
    PartialOrder closed = close_transitive(po);
    CHECK(closed.has(0, 2));

    PartialOrder cyc(2);
    cyc.set(0, 1);
    cyc.set(1, 0);
    CHECK_THROWS_AS(close_transitive(cyc), parse_error);
}

TEST_CASE("linear extension enumeration is exhaustive and ordered") {
    PartialOrder po(3);
    po.set(0, 1); // 0 before 1; 2 free
    po = close_transitive(po);
    std::vector<std::vector<int>> exts;
    for_each_linear_extension(po, [&](const std::vector<int>& ext) {
        exts.push_back(ext);
        return true;
    });
    std::vector<std::vector<int>> expected = {{0, 1, 2}, {0, 2, 1}, {2, 0, 1}};
    CHECK(exts == expected);
    CHECK(count_linear_extensions(po, 100) == 3);
    CHECK(first_linear_extension(po) == std::vector<int>{0, 1, 2});
}

TEST_CASE("extension_with_item_high puts the item under its forced superiors only") {
    PartialOrder po(4);
    po.set(0, 2); // 0 above 2
    po.set(2, 3); // 2 above 3
    po = close_transitive(po);
    std::vector<int> ext = extension_with_item_high(po, 2);
    CHECK(ext == std::vector<int>{0, 2, 1, 3});
    // unconstrained item goes on top
    CHECK(extension_with_item_high(po, 1) == std::vector<int>{1, 0, 2, 3});
}
