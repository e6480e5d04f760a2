#include "tsmr/rules.hpp"

#include <algorithm>

#include "tsmr/errors.hpp"

namespace tsmr {

std::optional<RuleId> rule_from_name(const std::string& name) {
    if (name == "tsmr") return RuleId::tsmr;
    if (name == "successive") return RuleId::successive;
    if (name == "amendment") return RuleId::amendment;
    return std::nullopt;
}

std::string rule_name(RuleId rule) {
    switch (rule) {
        case RuleId::tsmr: return "tsmr";
        case RuleId::successive: return "successive";
        case RuleId::amendment: return "amendment";
    }
    return "?";
}

int tsmr_winner_on_tally(const PairwiseTally& t, const Agenda& a,
                         const std::vector<std::uint8_t>* keep) {
    // The rightmost agenda candidate beaten by none of its kept predecessors.
    int winner = -1;
    std::vector<int> seen;
    seen.reserve(a.order.size());
    for (int c : a.order) {
        if (keep && !(*keep)[c]) continue;
        bool beaten = false;
        for (int d : seen)
            if (t.beats(d, c)) { beaten = true; break; }
        if (!beaten) winner = c;
        seen.push_back(c);
    }
    return winner;
}

int tsmr_winner(const Election& e, const Agenda& a) {
    if (e.labels.empty()) throw precondition_error("empty roster");
    return tsmr_winner_on_tally(tally(e), a);
}

int successive_winner(const Election& e, const Agenda& a) {
    if (e.labels.empty()) throw precondition_error("empty roster");
    const long long n = e.vote_count();
    if (n == 0) throw precondition_error("no votes: strict majority undefined");
    const int m = a.size();
    std::vector<int> pos_in_agenda = a.positions();
    for (int i = 0; i < m; ++i) {
        const int c = a.order[i];
        long long supporters = 0;
        for (const auto& v : e.votes) {
            std::vector<int> rank_pos(m);
            for (int r = 0; r < m; ++r) rank_pos[v.ranking[r]] = r;
            bool above_all = true;
            for (int j = i + 1; j < m && above_all; ++j)
                above_all = rank_pos[c] < rank_pos[a.order[j]];
            if (above_all) supporters += v.multiplicity;
        }
        if (2 * supporters > n) return c;
    }
    // The last candidate vacuously beats the empty successor set when n >= 1.
    return a.order[m - 1];
}

int amendment_winner(const Election& e, const Agenda& a) {
    if (e.labels.empty()) throw precondition_error("empty roster");
    PairwiseTally t = tally(e);
    int incumbent = a.order[0];
    for (int i = 1; i < a.size(); ++i) {
        const int challenger = a.order[i];
        if (!t.beats(incumbent, challenger)) incumbent = challenger;
    }
    return incumbent;
}

int winner(RuleId rule, const Election& e, const Agenda& a) {
    switch (rule) {
        case RuleId::tsmr: return tsmr_winner(e, a);
        case RuleId::successive: return successive_winner(e, a);
        case RuleId::amendment: return amendment_winner(e, a);
    }
    throw precondition_error("unknown rule");
}

std::optional<int> condorcet_winner(const PairwiseTally& t) {
    for (int c = 0; c < t.m; ++c) {
        bool beats_all = true;
        for (int d = 0; d < t.m && beats_all; ++d)
            if (d != c) beats_all = t.beats(c, d);
        if (beats_all) return c;
    }
    return std::nullopt;
}

std::vector<int> weak_condorcet_winners(const PairwiseTally& t) {
    std::vector<int> out;
    for (int c = 0; c < t.m; ++c) {
        bool beaten = false;
        for (int d = 0; d < t.m && !beaten; ++d)
            if (d != c) beaten = t.beats(d, c);
        if (!beaten) out.push_back(c);
    }
    return out;
}

std::optional<int> condorcet_winner(const Election& e) { return condorcet_winner(tally(e)); }

std::vector<int> weak_condorcet_winners(const Election& e) {
    return weak_condorcet_winners(tally(e));
}

} // namespace tsmr
