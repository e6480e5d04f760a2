#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tsmr/errors.hpp"
#include "tsmr/strategy.hpp"

using namespace tsmr;
using namespace tsmr::testing;

TEST_CASE("agenda control on the example") {
    Election e = example1();
    AgendaControlAnswer ans = agenda_control(e, 0); // p = a
    REQUIRE(ans.feasible);
    REQUIRE(ans.witness.has_value());
    // non-beaters {b, d} ascending, then a, then the wave {c}
    CHECK(ans.witness->order == std::vector<int>{1, 3, 0, 2});
    CHECK(tsmr_winner(e, *ans.witness) == 0);
}

TEST_CASE("agenda control trivial and cycle cases") {
    Election chain = make_election("a b c", {"a b c"});
    AgendaControlAnswer top = agenda_control(chain, 0);
    REQUIRE(top.feasible);
    CHECK(top.witness->order == std::vector<int>{1, 2, 0}); // all others first, then p

    // 3-cycle a->b->c->a, p = a: layout (b, a, c)
    Election cyc = make_election("a b c", {"a b c", "b c a", "c a b"});
    AgendaControlAnswer ans = agenda_control(cyc, 0);
    REQUIRE(ans.feasible);
    CHECK(ans.witness->order == std::vector<int>{1, 0, 2});
    CHECK(tsmr_winner(cyc, *ans.witness) == 0);
}

TEST_CASE("agenda control of the example works for c as well") {
    // c is beaten by b and d, but the layering places a first and the
    // agenda (a, c, b, d) leaves c the rightmost survivor.
    Election e = example1();
    AgendaControlAnswer ans = agenda_control(e, 2);
    REQUIRE(ans.feasible);
    CHECK(ans.witness->order == std::vector<int>{0, 2, 1, 3});
    CHECK(agenda_control_oracle(e, 2));
}

TEST_CASE("agenda control oracle basics") {
    Election e = example1();
    CHECK(agenda_control_oracle(e, 0));

    Election solo = make_election("x", {"x"});
    CHECK(agenda_control_oracle(solo, 0));

    std::mt19937 rng(1);
    Election big = random_election(rng, 9, 3);
    CHECK_THROWS_AS(agenda_control_oracle(big, 0), cap_error);
}

TEST_CASE("agenda control equals the all-agendas oracle") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 2000; ++trial) {
        int m = 1 + static_cast<int>(rng() % 6);
        int n = static_cast<int>(rng() % 9);
        Election e = random_election(rng, m, n);
        int p = static_cast<int>(rng() % m);
        AgendaControlAnswer ans = agenda_control(e, p);
        CHECK(ans.feasible == agenda_control_oracle(e, p));
        if (ans.feasible) CHECK(tsmr_winner(e, *ans.witness) == p);
    }
}

TEST_CASE("coalition manipulation two-candidate cases") {
    Election e = make_election("p q", {"q p"});
    Agenda a = make_agenda(e, "q p");
    ManipulationAnswer ans = coalition_manipulation(e, 0, a, 1);
    REQUIRE(ans.feasible);
    CHECK(ans.witness->ranking == std::vector<int>{0, 1}); // p q
    CHECK(ans.witness->multiplicity == 1);

    Election e3 = make_election("p q", {"q p", "q p", "q p"});
    CHECK(!coalition_manipulation(e3, 0, a, 1).feasible);
}

TEST_CASE("manipulation keeps a current winner winning") {
    std::mt19937 rng(505);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4);
        int n = static_cast<int>(rng() % 7);
        Election e = random_election(rng, m, n);
        Agenda a = random_agenda(rng, m);
        int p = tsmr_winner(e, a);
        int k = 1 + static_cast<int>(rng() % 3);
        CHECK(coalition_manipulation(e, p, a, k).feasible);
    }
}

TEST_CASE("manipulation canonical ballot order follows the agenda") {
    Election e = make_election("a b c d e", {"e d c b a"});
    Agenda a = make_agenda(e, "d b c a e");
    ManipulationAnswer ans = coalition_manipulation(e, 2, a, 2); // p = c
    // ballot: c, then predecessors (d, b) in agenda order, then successors (a, e)
    Vote expected;
    expected.multiplicity = 2;
    expected.ranking = {2, 3, 1, 0, 4};
    Election manipulated = e;
    manipulated.votes.push_back(expected);
    CHECK(ans.feasible == (tsmr_winner(manipulated, a) == 2));
}

TEST_CASE("manipulation equals the exhaustive ballot-multiset oracle") {
    std::mt19937 rng(606);
    for (int trial = 0; trial < 1000; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4);
        int n = static_cast<int>(rng() % 6);
        int k = 1 + static_cast<int>(rng() % 2);
        Election e = random_election(rng, m, n);
        Agenda a = random_agenda(rng, m);
        int p = static_cast<int>(rng() % m);
        CHECK(coalition_manipulation(e, p, a, k).feasible == manipulation_oracle(e, p, a, k));
    }
}

TEST_CASE("manipulation oracle trivia and cap") {
    Election solo = make_election("x", {"x"});
    Agenda a = make_agenda(solo, "x");
    CHECK(manipulation_oracle(solo, 0, a, 1));

    Election e = make_election("a b c d e f", {});
    CHECK_THROWS_AS(manipulation_oracle(e, 0, make_agenda(e, "a b c d e f"), 3), cap_error);
}
