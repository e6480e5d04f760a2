#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tsmr/errors.hpp"
#include "tsmr/partial.hpp"

using namespace tsmr;
using namespace tsmr::testing;

TEST_CASE("necessary winner on fully specified inputs") {
    Election e = example1();
    PartialElection pe = to_partial_election(e);
    PartialAgenda pa = to_partial_agenda(make_agenda(e, "a b c d"));
    CHECK(necessary_winner(pe, pa, 0));  // a wins (a,b,c,d)
    CHECK(!necessary_winner(pe, pa, 1));
}

TEST_CASE("necessary winner with full freedom is false for m >= 2") {
    std::mt19937 rng(1);
    for (int m = 2; m <= 4; ++m) {
        PartialElection pe = random_partial_election(rng, m, 2, 0); // no constraints
        for (auto& v : pe.votes) v.order = PartialOrder(m);
        PartialAgenda pa(m);
        CHECK(!necessary_winner(pe, pa, 0));
    }
}

TEST_CASE("single candidate is always the necessary winner") {
    PartialElection pe;
    pe.labels = {"x"};
    pe.votes.push_back({PartialOrder(1), 1});
    CHECK(necessary_winner(pe, PartialOrder(1), 0));
}

TEST_CASE("necessary winner equals the all-completions brute force") {
    std::mt19937 rng(2020);
    int done = 0;
    while (done < 300) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 4);
        PartialElection pe = random_partial_election(rng, m, n, 40 + static_cast<int>(rng() % 50));
        PartialAgenda pa = random_partial_order(rng, m, 50 + static_cast<int>(rng() % 50));
        int p = static_cast<int>(rng() % m);
        AllCompletions brute(pe, pa, p);
        if (brute.total() > 100000) continue;
        auto [some, all] = brute.sweep();
        CHECK(necessary_winner(pe, pa, p) == all);
        CHECK(possible_winner_exact(pe, pa, p, {200000}) == some);
        if (all) CHECK(possible_winner_exact(pe, pa, p, {200000}));
        ++done;
    }
}

TEST_CASE("necessary winner sees predecessors forced through p") {
    // pa orders x before p; c is free. In any extension with p before c, x is
    // also before c, and x beats c in every completion, so c never survives.
    // p ties everyone and wins every completion.
    PartialElection pe;
    pe.labels = {"x", "p", "c"};
    pe.votes.push_back({chain_order(3, {0, 2, 1}), 1}); // x c p
    pe.votes.push_back({chain_order(3, {1, 0, 2}), 1}); // p x c
    PartialOrder pa(3);
    pa.set(0, 1);
    pa = close_transitive(pa);
    AllCompletions brute(pe, pa, 1);
    auto [some, all] = brute.sweep();
    CHECK(all);
    CHECK(necessary_winner(pe, pa, 1));
}

TEST_CASE("possible winner on complete inputs reduces to winner equality") {
    std::mt19937 rng(2121);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4);
        int n = 1 + static_cast<int>(rng() % 5);
        Election e = random_election(rng, m, n);
        Agenda a = random_agenda(rng, m);
        int p = static_cast<int>(rng() % m);
        bool wins = tsmr_winner(e, a) == p;
        CHECK(possible_winner_exact(to_partial_election(e), to_partial_agenda(a), p, {1000}) ==
              wins);
        CHECK(necessary_winner(to_partial_election(e), to_partial_agenda(a), p) == wins);
    }
}

TEST_CASE("possible winner budget errors") {
    std::mt19937 rng(3);
    PartialElection pe = random_partial_election(rng, 4, 4, 0);
    PartialAgenda pa(4);
    CHECK_THROWS_AS(possible_winner_exact(pe, pa, 0, {10}), cap_error);
    CHECK_THROWS_AS(possible_winner_exact(pe, pa, 0, {0}), precondition_error);
}

TEST_CASE("possible winner p-last hand cases") {
    // all ballots rank p first
    PartialElection pe;
    pe.labels = {"p", "c"};
    PartialOrder top(2);
    top.set(0, 1);
    pe.votes.push_back({close_transitive(top), 2});
    Agenda a;
    a.order = {1, 0};
    CHECK(possible_winner_p_last(pe, a, 0));

    // one fixed ballot c>p plus one free ballot: free completes p>c, tie
    PartialElection pe2;
    pe2.labels = {"p", "c"};
    PartialOrder fixed(2);
    fixed.set(1, 0);
    pe2.votes.push_back({close_transitive(fixed), 1});
    pe2.votes.push_back({PartialOrder(2), 1});
    CHECK(possible_winner_p_last(pe2, a, 0));

    // two fixed ballots c>p: hopeless
    PartialElection pe3 = pe2;
    pe3.votes[1] = pe3.votes[0];
    CHECK(!possible_winner_p_last(pe3, a, 0));

    Agenda wrong;
    wrong.order = {0, 1};
    CHECK_THROWS_AS(possible_winner_p_last(pe2, wrong, 0), precondition_error);
}

TEST_CASE("possible winner p-last equals the exhaustive check") {
    std::mt19937 rng(2323);
    int done = 0;
    while (done < 300) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 4);
        PartialElection pe = random_partial_election(rng, m, n, 30 + static_cast<int>(rng() % 60));
        int p = static_cast<int>(rng() % m);
        Agenda a = random_agenda(rng, m);
        std::swap(a.order[a.positions()[p]], a.order[m - 1]);
        PartialAgenda pa = to_partial_agenda(a);
        long long count = completion_count(pe, pa, 100001);
        if (count > 100000) continue;
        CHECK(possible_winner_p_last(pe, a, p) == possible_winner_exact(pe, pa, p, {100000}));
        ++done;
    }
}
