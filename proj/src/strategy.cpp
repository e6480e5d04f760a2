#include "tsmr/strategy.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>

#include "tsmr/errors.hpp"
#include "tsmr/rules.hpp"

namespace tsmr {

AgendaControlAnswer agenda_control(const Election& e, int p) {
    const int m = e.candidate_count();
    PairwiseTally t = tally(e);

    std::vector<char> placed(m, 0);
    Agenda agenda;
    agenda.order.reserve(m);

    // Non-beaters of p, ascending id, then p itself.
    for (int c = 0; c < m; ++c)
        if (c != p && !t.beats(c, p)) {
            agenda.order.push_back(c);
            placed[c] = 1;
        }
    agenda.order.push_back(p);
    placed[p] = 1;

    // Wave expansion over p's beaters: append everything the placed
    // non-p candidates beat, until no wave grows.
    std::vector<int> frontier_src(agenda.order.begin(), agenda.order.end() - 1);
    while (true) {
        std::vector<int> wave;
        for (int c = 0; c < m; ++c) {
            if (placed[c]) continue;
            for (int s : frontier_src)
                if (t.beats(s, c)) { wave.push_back(c); break; }
        }
        if (wave.empty()) break;
        for (int c : wave) {
            agenda.order.push_back(c);
            placed[c] = 1;
            frontier_src.push_back(c);
        }
    }

    AgendaControlAnswer ans;
    ans.feasible = static_cast<int>(agenda.order.size()) == m;
    if (ans.feasible) {
        assert(tsmr_winner(e, agenda) == p);
        ans.witness = std::move(agenda);
    }
    return ans;
}

bool agenda_control_oracle(const Election& e, int p, int max_m) {
    const int m = e.candidate_count();
    if (m > max_m) throw cap_error("enumeration cap: m = " + std::to_string(m) + " exceeds " +
                                   std::to_string(max_m));
    PairwiseTally t = tally(e);
    Agenda a;
    a.order.resize(m);
    std::iota(a.order.begin(), a.order.end(), 0);
    do {
        if (tsmr_winner_on_tally(t, a) == p) return true;
    } while (std::next_permutation(a.order.begin(), a.order.end()));
    return false;
}

ManipulationAnswer coalition_manipulation(const Election& e, int p, const Agenda& a, int k) {
    if (k < 1) throw precondition_error("k must be positive");
    Vote ballot;
    ballot.multiplicity = k;
    ballot.ranking.push_back(p);
    for (int c : a.order)
        if (c != p) ballot.ranking.push_back(c); // predecessors first, both in agenda order

    Election manipulated = e;
    manipulated.votes.push_back(ballot);

    ManipulationAnswer ans;
    ans.feasible = tsmr_winner(manipulated, a) == p;
    if (ans.feasible) ans.witness = std::move(ballot);
    return ans;
}

bool manipulation_oracle(const Election& e, int p, const Agenda& a, int k, long long cap) {
    const int m = e.candidate_count();
    long long factorial = 1;
    for (int i = 2; i <= m; ++i) factorial *= i;
    long long space = 1;
    for (int i = 0; i < k; ++i) {
        if (space > cap / factorial) throw cap_error("enumeration cap: (m!)^k exceeds cap");
        space *= factorial;
    }

    std::vector<std::vector<int>> rankings;
    {
        std::vector<int> r(m);
        std::iota(r.begin(), r.end(), 0);
        do rankings.push_back(r);
        while (std::next_permutation(r.begin(), r.end()));
    }

    PairwiseTally base = tally(e);
    // Multisets of k ballots as nondecreasing index tuples.
    std::vector<int> pick(k, 0);
    std::function<bool(int, int)> rec = [&](int depth, int from) {
        if (depth == k) return tsmr_winner_on_tally(base, a) == p;
        for (int i = from; i < static_cast<int>(rankings.size()); ++i) {
            base.add_vote(rankings[i], 1);
            bool found = rec(depth + 1, i);
            base.remove_vote(rankings[i], 1);
            if (found) return true;
        }
        return false;
    };
    return rec(0, 0);
}

} // namespace tsmr
