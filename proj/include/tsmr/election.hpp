#ifndef TSMR_ELECTION_HPP
#define TSMR_ELECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsmr/partial_order.hpp"

namespace tsmr {

/// A ballot: complete ranking over the roster, most-preferred first,
/// counted `multiplicity` times.
struct Vote {
    std::vector<int> ranking;
    int multiplicity = 1;

    bool operator==(const Vote& o) const {
        return multiplicity == o.multiplicity && ranking == o.ranking;
    }
};

/// Candidate ids are dense 0..m-1; labels index by id.
struct Election {
    std::vector<std::string> labels;
    std::vector<Vote> votes;

    int candidate_count() const { return static_cast<int>(labels.size()); }
    long long vote_count() const;

    bool operator==(const Election& o) const { return labels == o.labels && votes == o.votes; }
};

/// Priority order over the roster; order[0] is considered first.
struct Agenda {
    std::vector<int> order;

    int size() const { return static_cast<int>(order.size()); }
    /// positions()[c] = index of candidate c in the agenda.
    std::vector<int> positions() const;

    bool operator==(const Agenda& o) const { return order == o.order; }
};

/// counts[c][c'] = multiplicity-weighted number of votes ranking c before c'.
struct PairwiseTally {
    int m = 0;
    long long n = 0;
    std::vector<long long> counts;

    PairwiseTally() = default;
    explicit PairwiseTally(int candidates)
        : m(candidates), counts(static_cast<size_t>(candidates) * candidates, 0) {}

    long long& at(int a, int b) { return counts[static_cast<size_t>(a) * m + b]; }
    long long at(int a, int b) const { return counts[static_cast<size_t>(a) * m + b]; }
    bool beats(int a, int b) const { return at(a, b) > at(b, a); }
    bool ties(int a, int b) const { return a != b && at(a, b) == at(b, a); }

    void add_vote(const std::vector<int>& ranking, int multiplicity);
    void remove_vote(const std::vector<int>& ranking, int multiplicity);
};

/// Oriented graph: arc (c,c') present iff c strictly beats c'. Ties give no arc.
struct MajorityGraph {
    int m = 0;
    std::vector<std::uint8_t> arc;

    MajorityGraph() = default;
    explicit MajorityGraph(int candidates)
        : m(candidates), arc(static_cast<size_t>(candidates) * candidates, 0) {}

    bool has_arc(int a, int b) const { return arc[static_cast<size_t>(a) * m + b] != 0; }
    void set_arc(int a, int b) { arc[static_cast<size_t>(a) * m + b] = 1; }

    std::vector<int> in_neighbors(int c) const;
    std::vector<int> out_neighbors(int c) const;
    std::vector<std::pair<int, int>> arcs() const;

    bool operator==(const MajorityGraph& o) const { return m == o.m && arc == o.arc; }
};

/// Partially specified ballot: transitively closed constraint set.
struct PartialVote {
    PartialOrder order;
    int multiplicity = 1;
};

struct PartialElection {
    std::vector<std::string> labels;
    std::vector<PartialVote> votes;

    int candidate_count() const { return static_cast<int>(labels.size()); }
    long long vote_count() const;
};

using PartialAgenda = PartialOrder;

PairwiseTally tally(const Election& e);
MajorityGraph majority_graph(const Election& e);
MajorityGraph majority_graph(const PairwiseTally& t);

/// Pairs tied in the pairwise tally, (a,b) with a < b.
std::vector<std::pair<int, int>> tied_pairs(const Election& e);

struct Restriction {
    Election election;
    std::vector<int> kept; // kept[new_id] = old_id, ascending
};

/// Drops candidates outside `keep`; ids are re-indexed densely in ascending
/// old-id order and the map retained. Throws precondition_error on empty keep.
Restriction restrict(const Election& e, const std::vector<int>& keep);
Agenda restrict_agenda(const Agenda& a, const std::vector<int>& keep);

/// Subgraph of g with only forward arcs: source before target in the agenda.
MajorityGraph forward_graph(const MajorityGraph& g, const Agenda& a);

/// Full ranking as a maximal constraint set.
PartialOrder chain_order(int m, const std::vector<int>& ranking);

} // namespace tsmr

#endif
