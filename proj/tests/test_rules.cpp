#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tsmr/errors.hpp"

using namespace tsmr;
using namespace tsmr::testing;

TEST_CASE("tsmr winner on the example") {
    Election e = example1();
    CHECK(e.labels[tsmr_winner(e, make_agenda(e, "a b c d"))] == "a");
    CHECK(e.labels[tsmr_winner(e, make_agenda(e, "d c b a"))] == "b");

    Election solo = make_election("x", {"x"});
    CHECK(tsmr_winner(solo, make_agenda(solo, "x")) == 0);
}

TEST_CASE("tsmr and amendment accept empty vote multisets") {
    Election e = make_election("a b c", {});
    CHECK(tsmr_winner(e, make_agenda(e, "b c a")) == 0);      // last
    CHECK(amendment_winner(e, make_agenda(e, "b c a")) == 0); // every round ties to challenger
}

TEST_CASE("successive winner on the example") {
    Election e = example1();
    CHECK(e.labels[successive_winner(e, make_agenda(e, "a b c d"))] == "d");

    Election two = make_election("a b", {"a b"});
    CHECK(successive_winner(two, make_agenda(two, "a b")) == 0);

    Election solo = make_election("x", {"x"});
    CHECK(successive_winner(solo, make_agenda(solo, "x")) == 0);

    Election none = make_election("a b", {});
    CHECK_THROWS_AS(successive_winner(none, make_agenda(none, "a b")), precondition_error);
}

TEST_CASE("amendment winner on the example") {
    Election e = example1();
    // rounds: a vs b -> a; a vs c -> c; c vs d -> d
    CHECK(e.labels[amendment_winner(e, make_agenda(e, "a b c d"))] == "d");

    Election solo = make_election("x", {"x"});
    CHECK(amendment_winner(solo, make_agenda(solo, "x")) == 0);

    Election tie = make_election("x y", {"x y", "y x"});
    CHECK(tie.labels[amendment_winner(tie, make_agenda(tie, "x y"))] == "y");
}

TEST_CASE("condorcet diagnostics") {
    Election e = example1();
    CHECK(!condorcet_winner(e).has_value());
    CHECK(weak_condorcet_winners(e).empty());

    Election chain = make_election("a b c", {"a b c"});
    CHECK(condorcet_winner(chain) == 0);
    CHECK(weak_condorcet_winners(chain) == std::vector<int>{0});

    Election tie = make_election("a b", {"a b", "b a"});
    CHECK(!condorcet_winner(tie).has_value());
    CHECK(weak_condorcet_winners(tie) == std::vector<int>{0, 1});
}

TEST_CASE("tsmr agrees with the from-definition recomputation") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 10000; ++trial) {
        int m = 1 + static_cast<int>(rng() % 6);
        int n = static_cast<int>(rng() % 16);
        Election e = random_election(rng, m, n);
        Agenda a = random_agenda(rng, m);
        CHECK(tsmr_winner(e, a) == tsmr_by_definition(e, a));
    }
}

namespace {

bool is_condorcet(const PairwiseTally& t, int c) {
    for (int d = 0; d < t.m; ++d)
        if (d != c && !t.beats(c, d)) return false;
    return true;
}

bool is_weak_condorcet(const PairwiseTally& t, int c) {
    for (int d = 0; d < t.m; ++d)
        if (d != c && t.beats(d, c)) return false;
    return true;
}

} // namespace

TEST_CASE("observation suite items (1)-(5) over random elections and all agendas") {
    std::mt19937 rng(202);
    for (int trial = 0; trial < 1500; ++trial) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 8);
        Election e = random_election(rng, m, n);
        PairwiseTally t = tally(e);
        for (const Agenda& a : all_agendas(m)) {
            int first = a.order.front(), last = a.order.back();
            int am = amendment_winner(e, a);
            int ts = tsmr_winner(e, a);
            int su = successive_winner(e, a);
            // (1) first is the amendment winner iff first is the Condorcet winner
            CHECK((am == first) == is_condorcet(t, first));
            // (2) last is the tsmr winner iff last is a weak Condorcet winner
            CHECK((ts == last) == is_weak_condorcet(t, last));
            // (3) first successive winner implies Condorcet winner
            if (su == first) CHECK(is_condorcet(t, first));
            // (4) first Condorcet winner implies tsmr winner
            if (is_condorcet(t, first)) CHECK(ts == first);
            // (5) last weak Condorcet implies successive and amendment winner
            if (is_weak_condorcet(t, last)) {
                CHECK(su == last);
                CHECK(am == last);
            }
        }
    }
}

TEST_CASE("observation item (6): counterexamples to the converses of (3)-(5)") {
    std::mt19937 rng(303);
    bool conv3 = false, conv4 = false, conv5 = false;
    for (int trial = 0; trial < 20000 && !(conv3 && conv4 && conv5); ++trial) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 7);
        Election e = random_election(rng, m, n);
        PairwiseTally t = tally(e);
        for (const Agenda& a : all_agendas(m)) {
            int first = a.order.front(), last = a.order.back();
            if (!conv3 && is_condorcet(t, first) && successive_winner(e, a) != first) conv3 = true;
            if (!conv4 && tsmr_winner(e, a) == first && !is_condorcet(t, first)) conv4 = true;
            if (!conv5 && successive_winner(e, a) == last && amendment_winner(e, a) == last &&
                !is_weak_condorcet(t, last))
                conv5 = true;
        }
    }
    CHECK(conv3);
    CHECK(conv4);
    CHECK(conv5);
}

TEST_CASE("tied pairs lint") {
    Election tie = make_election("a b c", {"a b c", "c b a"});
    auto ties = tied_pairs(tie);
    CHECK(ties == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(tied_pairs(example1()).empty());
}
