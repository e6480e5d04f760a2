#include "tsmr/partial.hpp"

#include <algorithm>
#include <map>

#include "tsmr/errors.hpp"
#include "tsmr/rules.hpp"

namespace tsmr {

PartialAgenda to_partial_agenda(const Agenda& a) {
    return chain_order(a.size(), a.order);
}

PartialElection to_partial_election(const Election& e) {
    PartialElection pe;
    pe.labels = e.labels;
    for (const auto& v : e.votes)
        pe.votes.push_back({chain_order(e.candidate_count(), v.ranking), v.multiplicity});
    return pe;
}

bool necessary_winner(const PartialElection& pe, const PartialAgenda& pa, int p) {
    const int m = pe.candidate_count();

    // Phase 1: some possible predecessor c of p completed to beat p.
    for (int c = 0; c < m; ++c) {
        if (c == p || pa.has(p, c)) continue;
        Election completed;
        completed.labels = pe.labels;
        for (const auto& v : pe.votes) {
            const PartialOrder& po =
                v.order.has(p, c) ? v.order : with_pair(v.order, c, p);
            completed.votes.push_back({first_linear_extension(po), v.multiplicity});
        }
        PairwiseTally t = tally(completed);
        if (t.beats(c, p)) return false;
    }

    // Phase 2: some possible successor c of p, ranked as high as every ballot
    // allows, left unbeaten by its forced agenda predecessors. With p placed
    // before c, the forced predecessors are those of c, p itself, and those
    // of p (the last group reaches c through p by transitivity).
    for (int c = 0; c < m; ++c) {
        if (c == p || pa.has(c, p)) continue;
        Election completed;
        completed.labels = pe.labels;
        for (const auto& v : pe.votes)
            completed.votes.push_back({extension_with_item_high(v.order, c), v.multiplicity});
        PairwiseTally t = tally(completed);
        bool beaten = t.beats(p, c);
        for (int x = 0; x < m && !beaten; ++x)
            beaten = x != c && x != p && (pa.has(x, c) || pa.has(x, p)) && t.beats(x, c);
        if (!beaten) return false;
    }
    return true;
}

long long completion_count(const PartialElection& pe, const PartialAgenda& pa, long long clamp) {
    long long total = count_linear_extensions(pa, clamp);
    for (const auto& v : pe.votes) {
        long long per = count_linear_extensions(v.order, clamp);
        for (int copy = 0; copy < v.multiplicity; ++copy) {
            if (per != 0 && total > clamp / per) return clamp;
            total *= per;
        }
    }
    return std::min(total, clamp);
}

namespace {

// Ballot completions grouped by identical constraint sets so equal ballots
// are enumerated as multisets of extensions rather than ordered tuples.
struct CompletionGroup {
    std::vector<std::vector<int>> extensions;
    int copies = 0;
};

struct CompletionSearch {
    const std::vector<CompletionGroup>* groups = nullptr;
    PairwiseTally t;
    const Agenda* agenda = nullptr;
    int p = -1;

    bool leaf() { return tsmr_winner_on_tally(t, *agenda) == p; }

    bool descend(size_t gi, int copies_left, int from) {
        if (gi == groups->size()) return leaf();
        const CompletionGroup& g = (*groups)[gi];
        if (copies_left == 0)
            return descend(gi + 1, gi + 1 < groups->size() ? (*groups)[gi + 1].copies : 0, 0);
        for (int i = from; i < static_cast<int>(g.extensions.size()); ++i) {
            t.add_vote(g.extensions[i], 1);
            bool found = descend(gi, copies_left - 1, i);
            t.remove_vote(g.extensions[i], 1);
            if (found) return true;
        }
        return false;
    }

    bool run() { return descend(0, groups->empty() ? 0 : (*groups)[0].copies, 0); }
};

} // namespace

bool possible_winner_exact(const PartialElection& pe, const PartialAgenda& pa, int p,
                           CompletionBudget budget) {
    if (budget.max_completions < 1) throw precondition_error("budget must be >= 1");
    long long count = completion_count(pe, pa, budget.max_completions + 1);
    if (count > budget.max_completions)
        throw cap_error("completion budget exceeded: at least " + std::to_string(count) +
                        " completions, budget " + std::to_string(budget.max_completions));

    const int m = pe.candidate_count();
    std::map<std::vector<std::uint8_t>, size_t> group_of;
    std::vector<CompletionGroup> groups;
    for (const auto& v : pe.votes) {
        auto it = group_of.find(v.order.before);
        if (it == group_of.end()) {
            CompletionGroup g;
            for_each_linear_extension(v.order, [&](const std::vector<int>& ext) {
                g.extensions.push_back(ext);
                return true;
            });
            group_of.emplace(v.order.before, groups.size());
            groups.push_back(std::move(g));
            it = group_of.find(v.order.before);
        }
        groups[it->second].copies += v.multiplicity;
    }

    bool found = false;
    for_each_linear_extension(pa, [&](const std::vector<int>& agenda_order) {
        CompletionSearch search;
        search.groups = &groups;
        search.t = PairwiseTally(m);
        Agenda a;
        a.order = agenda_order;
        search.agenda = &a;
        search.p = p;
        if (search.run()) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

bool possible_winner_p_last(const PartialElection& pe, const Agenda& a, int p) {
    if (a.size() != pe.candidate_count())
        throw precondition_error("agenda must order the full roster");
    if (a.order.empty() || a.order.back() != p) throw precondition_error("precondition: p last");

    Election completed;
    completed.labels = pe.labels;
    for (const auto& v : pe.votes)
        completed.votes.push_back({extension_with_item_high(v.order, p), v.multiplicity});
    PairwiseTally t = tally(completed);
    for (int c = 0; c < t.m; ++c)
        if (c != p && t.beats(c, p)) return false;
    return true;
}

} // namespace tsmr
