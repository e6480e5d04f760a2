#include "tsmr/election.hpp"

#include <algorithm>

#include "tsmr/errors.hpp"

namespace tsmr {

long long Election::vote_count() const {
    long long n = 0;
    for (const auto& v : votes) n += v.multiplicity;
    return n;
}

long long PartialElection::vote_count() const {
    long long n = 0;
    for (const auto& v : votes) n += v.multiplicity;
    return n;
}

std::vector<int> Agenda::positions() const {
    std::vector<int> pos(order.size());
    for (int i = 0; i < size(); ++i) pos[order[i]] = i;
    return pos;
}

void PairwiseTally::add_vote(const std::vector<int>& ranking, int multiplicity) {
    const int len = static_cast<int>(ranking.size());
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) at(ranking[i], ranking[j]) += multiplicity;
    n += multiplicity;
}

void PairwiseTally::remove_vote(const std::vector<int>& ranking, int multiplicity) {
    const int len = static_cast<int>(ranking.size());
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) at(ranking[i], ranking[j]) -= multiplicity;
    n -= multiplicity;
}

std::vector<int> MajorityGraph::in_neighbors(int c) const {
    std::vector<int> out;
    for (int a = 0; a < m; ++a)
        if (has_arc(a, c)) out.push_back(a);
    return out;
}

std::vector<int> MajorityGraph::out_neighbors(int c) const {
    std::vector<int> out;
    for (int b = 0; b < m; ++b)
        if (has_arc(c, b)) out.push_back(b);
    return out;
}

std::vector<std::pair<int, int>> MajorityGraph::arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (has_arc(a, b)) out.emplace_back(a, b);
    return out;
}

PairwiseTally tally(const Election& e) {
    PairwiseTally t(e.candidate_count());
    for (const auto& v : e.votes) t.add_vote(v.ranking, v.multiplicity);
    return t;
}

MajorityGraph majority_graph(const PairwiseTally& t) {
    MajorityGraph g(t.m);
    for (int a = 0; a < t.m; ++a)
        for (int b = 0; b < t.m; ++b)
            if (a != b && t.beats(a, b)) g.set_arc(a, b);
    return g;
}

MajorityGraph majority_graph(const Election& e) { return majority_graph(tally(e)); }

std::vector<std::pair<int, int>> tied_pairs(const Election& e) {
    PairwiseTally t = tally(e);
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < t.m; ++a)
        for (int b = a + 1; b < t.m; ++b)
            if (t.ties(a, b)) out.emplace_back(a, b);
    return out;
}

namespace {

std::vector<int> id_map(int m, const std::vector<int>& keep) {
    if (keep.empty()) throw precondition_error("empty restriction");
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<int> to_new(m, -1);
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
        if (kept[i] < 0 || kept[i] >= m) throw precondition_error("restriction id out of range");
        to_new[kept[i]] = i;
    }
    return to_new;
}

} // namespace

Restriction restrict(const Election& e, const std::vector<int>& keep) {
    std::vector<int> to_new = id_map(e.candidate_count(), keep);
    Restriction r;
    for (int old = 0; old < e.candidate_count(); ++old)
        if (to_new[old] >= 0) {
            r.kept.push_back(old);
            r.election.labels.push_back(e.labels[old]);
        }
    for (const auto& v : e.votes) {
        Vote nv;
        nv.multiplicity = v.multiplicity;
        for (int c : v.ranking)
            if (to_new[c] >= 0) nv.ranking.push_back(to_new[c]);
        r.election.votes.push_back(std::move(nv));
    }
    return r;
}

Agenda restrict_agenda(const Agenda& a, const std::vector<int>& keep) {
    std::vector<int> to_new = id_map(a.size(), keep);
    Agenda out;
    for (int c : a.order)
        if (to_new[c] >= 0) out.order.push_back(to_new[c]);
    return out;
}

MajorityGraph forward_graph(const MajorityGraph& g, const Agenda& a) {
    if (g.m != a.size()) throw precondition_error("graph and agenda roster sizes differ");
    std::vector<int> pos = a.positions();
    MajorityGraph f(g.m);
    for (int x = 0; x < g.m; ++x)
        for (int y = 0; y < g.m; ++y)
            if (g.has_arc(x, y) && pos[x] < pos[y]) f.set_arc(x, y);
    return f;
}

PartialOrder chain_order(int m, const std::vector<int>& ranking) {
    PartialOrder po(m);
    for (size_t i = 0; i < ranking.size(); ++i)
        for (size_t j = i + 1; j < ranking.size(); ++j) po.set(ranking[i], ranking[j]);
    return po;
}

} // namespace tsmr
