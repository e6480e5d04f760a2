#include "tsmr/reductions.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "tsmr/errors.hpp"
#include "tsmr/partial.hpp"
#include "tsmr/rules.hpp"

namespace tsmr {

std::vector<int> RbdsInstance::red_degrees() const {
    std::vector<int> deg(red_count(), 0);
    for (const auto& adj : blue_adj)
        for (int r : adj) ++deg[r];
    return deg;
}

bool RbdsInstance::blue_dominates(int b, int r) const {
    return std::binary_search(blue_adj[b].begin(), blue_adj[b].end(), r);
}

void validate_rbds(const RbdsInstance& g) {
    if (g.blue_count() == 0) throw parse_error("no blue vertices");
    if (static_cast<int>(g.blue_adj.size()) != g.blue_count())
        throw parse_error("adjacency size mismatch");
    if (g.kappa < 1 || g.kappa > g.blue_count())
        throw parse_error("kappa must satisfy 1 <= kappa <= |B|");
    {
        std::set<std::string> seen;
        for (const auto& l : g.red_labels)
            if (!seen.insert(l).second) throw parse_error("duplicate vertex label " + l);
        for (const auto& l : g.blue_labels)
            if (!seen.insert(l).second) throw parse_error("duplicate vertex label " + l);
    }
    for (const auto& adj : g.blue_adj) {
        for (int r : adj)
            if (r < 0 || r >= g.red_count()) throw parse_error("edge endpoint out of range");
        if (!std::is_sorted(adj.begin(), adj.end()) ||
            std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw parse_error("adjacency lists must be sorted and duplicate-free");
    }
}

std::optional<std::vector<int>> rbds_brute(const RbdsInstance& g, int cap_blues) {
    validate_rbds(g);
    const int nb = g.blue_count();
    if (nb > cap_blues)
        throw cap_error("rbds cap: |B| = " + std::to_string(nb) + " exceeds " +
                        std::to_string(cap_blues));
    const int nr = g.red_count();
    std::vector<int> pick(g.kappa);
    for (int i = 0; i < g.kappa; ++i) pick[i] = i;
    while (true) {
        std::vector<char> covered(nr, 0);
        for (int b : pick)
            for (int r : g.blue_adj[b]) covered[r] = 1;
        if (std::find(covered.begin(), covered.end(), 0) == covered.end()) return pick;
        // next combination, lexicographic
        int i = g.kappa - 1;
        while (i >= 0 && pick[i] == nb - g.kappa + i) --i;
        if (i < 0) return std::nullopt;
        ++pick[i];
        for (int j = i + 1; j < g.kappa; ++j) pick[j] = pick[j - 1] + 1;
    }
}

RbdsInstance normalize_rbds(const RbdsInstance& g) {
    validate_rbds(g);
    std::vector<int> deg = g.red_degrees();
    for (int r = 0; r < g.red_count(); ++r)
        if (deg[r] == 0) throw precondition_error("unsatisfiable red vertex " + g.red_labels[r]);
    const int target = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    RbdsInstance out = g;
    std::set<std::string> used(g.blue_labels.begin(), g.blue_labels.end());
    used.insert(g.red_labels.begin(), g.red_labels.end());
    int counter = 0;
    for (int r = 0; r < g.red_count(); ++r) {
        for (int extra = deg[r]; extra < target; ++extra) {
            std::string label;
            do label = "pad" + std::to_string(++counter);
            while (used.count(label));
            used.insert(label);
            out.blue_labels.push_back(label);
            out.blue_adj.push_back({r});
        }
    }
    return out;
}

Election mcgarvey(const std::vector<std::string>& labels,
                  const std::vector<std::pair<int, int>>& target_arcs) {
    const int m = static_cast<int>(labels.size());
    std::set<std::pair<int, int>> arcset;
    for (auto [a, b] : target_arcs) {
        if (a < 0 || a >= m || b < 0 || b >= m) throw precondition_error("arc endpoint out of range");
        if (a == b) throw precondition_error("reflexive arc");
        if (arcset.count({b, a})) throw precondition_error("symmetric arc pair");
        arcset.insert({a, b});
    }
    Election e;
    e.labels = labels;
    for (auto [a, b] : arcset) {
        std::vector<int> rest;
        for (int c = 0; c < m; ++c)
            if (c != a && c != b) rest.push_back(c);
        Vote v1;
        v1.ranking = {a, b};
        v1.ranking.insert(v1.ranking.end(), rest.begin(), rest.end());
        Vote v2;
        v2.ranking.assign(rest.rbegin(), rest.rend());
        v2.ranking.push_back(a);
        v2.ranking.push_back(b);
        e.votes.push_back(std::move(v1));
        e.votes.push_back(std::move(v2));
    }
    return e;
}

namespace {

struct ReductionMeta {
    ReductionId id;
    const char* name;
    ReductionPreconditions pre;
};

const ReductionMeta kMeta[kReductionCount] = {
    {ReductionId::ccav_first, "ccav-first", {false, false, 1, 1}},
    {ReductionId::ccav_last, "ccav-last", {false, false, 1, 1}},
    {ReductionId::ccdv_first_k, "ccdv-first-k", {true, true, 4, 1}},
    {ReductionId::ccdv_first_dual, "ccdv-first-dual", {true, false, 1, 1}},
    {ReductionId::ccdv_last_k, "ccdv-last-k", {true, true, 4, 1}},
    {ReductionId::ccdv_last_dual, "ccdv-last-dual", {false, false, 1, 1}},
    {ReductionId::ccac_first, "ccac-first", {false, false, 1, 1}},
    {ReductionId::dcav_nonlast, "dcav-nonlast", {false, false, 1, 1}},
    // degree >= 2: the destructive reuse needs q to keep beating every red
    // after k deletions, a margin of 2l-2; at l = 1 a red can tie q and win.
    {ReductionId::dcdv_k, "dcdv-k", {true, true, 4, 2}},
    // kappa >= 2 for the same reason: the post-deletion margin is 2kappa-2.
    {ReductionId::dcdv_dual, "dcdv-dual", {false, false, 2, 1}},
    {ReductionId::pw_first, "pw-first", {true, true, 1, 1}},
    {ReductionId::pw_penultimate, "pw-penultimate", {true, false, 1, 1}},
};

const ReductionMeta& meta_of(ReductionId id) {
    for (const auto& m : kMeta)
        if (m.id == id) return m;
    throw precondition_error("unknown reduction id");
}

} // namespace

std::optional<ReductionId> reduction_from_name(const std::string& name) {
    for (const auto& m : kMeta)
        if (name == m.name) return m.id;
    return std::nullopt;
}

std::string reduction_name(ReductionId id) { return meta_of(id).name; }

const std::vector<ReductionId>& all_reductions() {
    static const std::vector<ReductionId> ids = [] {
        std::vector<ReductionId> v;
        for (const auto& m : kMeta) v.push_back(m.id);
        return v;
    }();
    return ids;
}

ReductionPreconditions reduction_preconditions(ReductionId id) { return meta_of(id).pre; }

std::string reduction_precondition_violation(const RbdsInstance& g, ReductionId id) {
    const ReductionPreconditions pre = reduction_preconditions(id);
    std::vector<int> deg = g.red_degrees();
    if (g.kappa < pre.min_kappa)
        return "assumes kappa >= " + std::to_string(pre.min_kappa);
    if (pre.needs_regular_reds) {
        if (g.red_count() == 0) return "assumes at least one red vertex (degree l >= 1)";
        int l = deg[0];
        for (int d : deg)
            if (d != l) return "assumes every red vertex has the same degree";
        if (l < pre.min_degree) return "assumes red degree l >= " + std::to_string(pre.min_degree);
    }
    if (pre.needs_no_isolated) {
        for (int d : deg)
            if (d == 0) return "assumes no isolated red vertices";
        for (const auto& adj : g.blue_adj)
            if (adj.empty()) return "assumes no isolated blue vertices";
    }
    return "";
}

namespace {

// Ballot segment helpers: ascending / descending candidate-id order, with
// restriction or exclusion by membership.
std::vector<int> asc(const std::vector<int>& ids) { return ids; }

std::vector<int> desc(const std::vector<int>& ids) {
    return std::vector<int>(ids.rbegin(), ids.rend());
}

std::vector<int> restricted(const std::vector<int>& seq, const std::vector<char>& member) {
    std::vector<int> out;
    for (int c : seq)
        if (member[c]) out.push_back(c);
    return out;
}

std::vector<int> excluding(const std::vector<int>& seq, const std::vector<char>& member) {
    std::vector<int> out;
    for (int c : seq)
        if (!member[c]) out.push_back(c);
    return out;
}

Vote make_vote(int mult, std::initializer_list<std::vector<int>> segments) {
    Vote v;
    v.multiplicity = mult;
    for (const auto& seg : segments) v.ranking.insert(v.ranking.end(), seg.begin(), seg.end());
    return v;
}

struct Layout {
    std::vector<std::string> labels;
    std::vector<int> reds;  // candidate ids of red vertices, ascending
    std::vector<int> blues; // candidate ids of blue vertices (when candidates)
    int p = -1, q = -1, q2 = -1;

    std::vector<char> neighbor_mask(const RbdsInstance& g, int b) const {
        std::vector<char> mask(labels.size(), 0);
        for (int r : g.blue_adj[b]) mask[reds[r]] = 1;
        return mask;
    }
};

std::string fresh_label(std::set<std::string>& used, std::string base) {
    while (used.count(base)) base += "_";
    used.insert(base);
    return base;
}

// Special candidates first (p, q, q'), then reds, then blues where candidates.
Layout make_layout(const RbdsInstance& g, bool with_q, bool with_q2, bool blues_are_candidates) {
    Layout lay;
    std::set<std::string> used(g.red_labels.begin(), g.red_labels.end());
    if (blues_are_candidates) used.insert(g.blue_labels.begin(), g.blue_labels.end());
    lay.p = 0;
    lay.labels.push_back(fresh_label(used, "p"));
    if (with_q) {
        lay.q = static_cast<int>(lay.labels.size());
        lay.labels.push_back(fresh_label(used, "q"));
    }
    if (with_q2) {
        lay.q2 = static_cast<int>(lay.labels.size());
        lay.labels.push_back(fresh_label(used, "q'"));
    }
    for (const auto& l : g.red_labels) {
        lay.reds.push_back(static_cast<int>(lay.labels.size()));
        lay.labels.push_back(l);
    }
    if (blues_are_candidates)
        for (const auto& l : g.blue_labels) {
            lay.blues.push_back(static_cast<int>(lay.labels.size()));
            lay.labels.push_back(l);
        }
    return lay;
}

int push_votes(ControlInstance& inst, Vote v, int& expanded_offset) {
    int first = expanded_offset;
    expanded_offset += v.multiplicity;
    if (v.multiplicity > 0) inst.registered_votes.push_back(std::move(v));
    return first;
}

int red_degree_l(const RbdsInstance& g) {
    std::vector<int> deg = g.red_degrees();
    return deg.empty() ? 0 : deg[0];
}

} // namespace

ReductionOutput reduce(const RbdsInstance& g, ReductionId id) {
    validate_rbds(g);
    {
        std::string violation = reduction_precondition_violation(g, id);
        if (!violation.empty())
            throw precondition_error(reduction_name(id) + " " + violation);
    }

    const int nb = g.blue_count();
    const int kappa = g.kappa;
    const int l = red_degree_l(g);

    ReductionOutput out;
    out.which = id;

    auto control_common = [&](const Layout& lay, Agenda agenda, ControlMode mode,
                              int distinguished) {
        out.control.labels = lay.labels;
        out.control.unregistered.assign(lay.labels.size(), 0);
        out.control.agenda = std::move(agenda);
        out.control.mode = mode;
        out.control.distinguished = distinguished;
    };

    switch (id) {
        case ReductionId::ccav_first: {
            Layout lay = make_layout(g, false, false, true);
            Agenda a;
            a.order.push_back(lay.p);
            for (int b : lay.blues) a.order.push_back(b);
            for (int r : lay.reds) a.order.push_back(r);
            control_common(lay, a, ControlMode::constructive, lay.p);
            out.control.registered_votes.push_back(
                make_vote(kappa, {desc(lay.blues), desc(lay.reds), {lay.p}}));
            out.control.registered_votes.push_back(
                make_vote(1, {desc(lay.reds), {lay.p}, desc(lay.blues)}));
            out.element_kind = ReductionOutput::ElementKind::unregistered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                std::vector<char> self(lay.labels.size(), 0);
                self[lay.blues[b]] = 1;
                out.control.unregistered_votes.push_back(
                    make_vote(1, {{lay.p}, excluding(desc(lay.reds), nbm), {lay.blues[b]},
                                  restricted(desc(lay.reds), nbm), excluding(desc(lay.blues), self)}));
                out.blue_to_element.push_back(b);
            }
            out.control.k_av = kappa;
            break;
        }
        case ReductionId::ccav_last: {
            Layout lay = make_layout(g, true, false, false);
            Agenda a;
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.q);
            a.order.push_back(lay.p);
            control_common(lay, a, ControlMode::constructive, lay.p);
            if (kappa - 1 > 0)
                out.control.registered_votes.push_back(
                    make_vote(kappa - 1, {{lay.q}, {lay.p}, asc(lay.reds)}));
            out.control.registered_votes.push_back(
                make_vote(1, {{lay.q}, asc(lay.reds), {lay.p}}));
            out.element_kind = ReductionOutput::ElementKind::unregistered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                out.control.unregistered_votes.push_back(
                    make_vote(1, {excluding(asc(lay.reds), nbm), {lay.p},
                                  restricted(asc(lay.reds), nbm), {lay.q}}));
                out.blue_to_element.push_back(b);
            }
            out.control.k_av = kappa;
            break;
        }
        case ReductionId::ccdv_first_k: {
            Layout lay = make_layout(g, true, true, false);
            Agenda a;
            a.order.push_back(lay.p);
            a.order.push_back(lay.q2);
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.q);
            control_common(lay, a, ControlMode::constructive, lay.p);
            int off = 0;
            push_votes(out.control, make_vote(l + 1, {{lay.q2}, {lay.p}, {lay.q}, desc(lay.reds)}),
                       off);
            push_votes(out.control,
                       make_vote(kappa + l - 2, {{lay.q}, {lay.p}, desc(lay.reds), {lay.q2}}), off);
            push_votes(out.control,
                       make_vote(nb - kappa + 1, {desc(lay.reds), {lay.p}, {lay.q}, {lay.q2}}),
                       off);
            push_votes(out.control, make_vote(1, {desc(lay.reds), {lay.q}, {lay.p}, {lay.q2}}),
                       off);
            push_votes(out.control, make_vote(kappa - 2, {desc(lay.reds), {lay.q2}, {lay.p}, {lay.q}}),
                       off);
            out.element_kind = ReductionOutput::ElementKind::registered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                int idx = push_votes(
                    out.control,
                    make_vote(1, {{lay.q}, {lay.q2}, restricted(desc(lay.reds), nbm), {lay.p},
                                  excluding(desc(lay.reds), nbm)}),
                    off);
                out.blue_to_element.push_back(idx);
            }
            out.control.k_dv = kappa;
            break;
        }
        case ReductionId::ccdv_first_dual: {
            Layout lay = make_layout(g, true, false, false);
            Agenda a;
            a.order.push_back(lay.p);
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.q);
            control_common(lay, a, ControlMode::constructive, lay.p);
            int off = 0;
            push_votes(out.control, make_vote(kappa, {{lay.p}, {lay.q}, desc(lay.reds)}), off);
            push_votes(out.control, make_vote(1, {desc(lay.reds), {lay.p}, {lay.q}}), off);
            out.element_kind = ReductionOutput::ElementKind::registered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                int idx = push_votes(out.control,
                                     make_vote(1, {{lay.q}, excluding(desc(lay.reds), nbm),
                                                   {lay.p}, restricted(desc(lay.reds), nbm)}),
                                     off);
                out.blue_to_element.push_back(idx);
            }
            out.control.k_dv = nb - kappa;
            break;
        }
        case ReductionId::ccdv_last_k:
        case ReductionId::dcdv_k: {
            Layout lay = make_layout(g, true, false, false);
            Agenda a;
            a.order.push_back(lay.q);
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.p);
            const bool destructive = id == ReductionId::dcdv_k;
            control_common(lay, a,
                           destructive ? ControlMode::destructive : ControlMode::constructive,
                           destructive ? lay.q : lay.p);
            int off = 0;
            push_votes(out.control, make_vote(nb + 1, {desc(lay.reds), {lay.p}, {lay.q}}), off);
            push_votes(out.control, make_vote(l + kappa, {{lay.q}, {lay.p}, desc(lay.reds)}), off);
            if (l - 1 > 0)
                push_votes(out.control, make_vote(l - 1, {{lay.p}, {lay.q}, desc(lay.reds)}), off);
            out.element_kind = ReductionOutput::ElementKind::registered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                int idx = push_votes(out.control,
                                     make_vote(1, {{lay.q}, restricted(desc(lay.reds), nbm),
                                                   {lay.p}, excluding(desc(lay.reds), nbm)}),
                                     off);
                out.blue_to_element.push_back(idx);
            }
            out.control.k_dv = kappa;
            break;
        }
        case ReductionId::ccdv_last_dual:
        case ReductionId::dcdv_dual: {
            Layout lay = make_layout(g, true, false, false);
            Agenda a;
            a.order.push_back(lay.q);
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.p);
            const bool destructive = id == ReductionId::dcdv_dual;
            control_common(lay, a,
                           destructive ? ControlMode::destructive : ControlMode::constructive,
                           destructive ? lay.q : lay.p);
            int off = 0;
            if (kappa - 1 > 0)
                push_votes(out.control, make_vote(kappa - 1, {{lay.p}, {lay.q}, asc(lay.reds)}),
                           off);
            push_votes(out.control, make_vote(1, {asc(lay.reds), {lay.p}, {lay.q}}), off);
            out.element_kind = ReductionOutput::ElementKind::registered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                int idx = push_votes(out.control,
                                     make_vote(1, {{lay.q}, excluding(asc(lay.reds), nbm),
                                                   {lay.p}, restricted(asc(lay.reds), nbm)}),
                                     off);
                out.blue_to_element.push_back(idx);
            }
            out.control.k_dv = nb - kappa;
            break;
        }
        case ReductionId::ccac_first: {
            Layout lay = make_layout(g, false, false, true);
            Agenda a;
            a.order.push_back(lay.p);
            for (int b : lay.blues) a.order.push_back(b);
            for (int r : lay.reds) a.order.push_back(r);
            control_common(lay, a, ControlMode::constructive, lay.p);
            for (int b : lay.blues) out.control.unregistered[b] = 1;

            std::vector<std::pair<int, int>> arcs;
            const int nr = g.red_count();
            for (int i = 0; i < nr; ++i)
                for (int j = i + 1; j < nr; ++j) arcs.emplace_back(lay.reds[j], lay.reds[i]);
            for (int r : lay.reds) arcs.emplace_back(r, lay.p);
            for (int b : lay.blues) arcs.emplace_back(lay.p, b);
            for (int b = 0; b < nb; ++b)
                for (int r = 0; r < nr; ++r)
                    if (g.blue_dominates(b, r)) arcs.emplace_back(lay.blues[b], lay.reds[r]);
                    else arcs.emplace_back(lay.reds[r], lay.blues[b]);
            for (int i = 0; i < nb; ++i)
                for (int j = i + 1; j < nb; ++j) arcs.emplace_back(lay.blues[i], lay.blues[j]);

            Election mv = mcgarvey(lay.labels, arcs);
            out.control.registered_votes = std::move(mv.votes);
            out.element_kind = ReductionOutput::ElementKind::unregistered_candidate;
            for (int b = 0; b < nb; ++b) out.blue_to_element.push_back(lay.blues[b]);
            out.control.k_ac = kappa;
            break;
        }
        case ReductionId::dcav_nonlast: {
            Layout lay = make_layout(g, true, false, false);
            Agenda a;
            a.order.push_back(lay.p);
            for (int r : lay.reds) a.order.push_back(r);
            a.order.push_back(lay.q);
            control_common(lay, a, ControlMode::destructive, lay.p);
            if (kappa - 1 > 0)
                out.control.registered_votes.push_back(
                    make_vote(kappa - 1, {{lay.p}, {lay.q}, asc(lay.reds)}));
            out.control.registered_votes.push_back(
                make_vote(2, {{lay.p}, asc(lay.reds), {lay.q}}));
            out.control.registered_votes.push_back(
                make_vote(1, {{lay.q}, {lay.p}, asc(lay.reds)}));
            out.element_kind = ReductionOutput::ElementKind::unregistered_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                out.control.unregistered_votes.push_back(
                    make_vote(1, {excluding(asc(lay.reds), nbm), {lay.q}, {lay.p},
                                  restricted(asc(lay.reds), nbm)}));
                out.blue_to_element.push_back(b);
            }
            out.control.k_av = kappa;
            break;
        }
        case ReductionId::pw_first: {
            Layout lay = make_layout(g, true, false, false);
            out.is_partial = true;
            out.distinguished = lay.p;
            out.partial_election.labels = lay.labels;
            out.partial_agenda.order.push_back(lay.p);
            out.partial_agenda.order.push_back(lay.q);
            for (int r : lay.reds) out.partial_agenda.order.push_back(r);

            const int m = static_cast<int>(lay.labels.size());
            out.element_kind = ReductionOutput::ElementKind::partial_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                // full chain over reds and p, with q above every non-neighbor
                std::vector<int> chain = restricted(desc(lay.reds), nbm);
                chain.push_back(lay.p);
                auto nonneighbors = excluding(desc(lay.reds), nbm);
                chain.insert(chain.end(), nonneighbors.begin(), nonneighbors.end());
                PartialOrder po = chain_order(m, chain);
                for (int r : nonneighbors) po.set(lay.q, r);
                out.partial_election.votes.push_back({close_transitive(po), 1});
                out.blue_to_element.push_back(b);
            }
            auto add_complete = [&](int mult, std::initializer_list<std::vector<int>> segs) {
                Vote v = make_vote(mult, segs);
                out.partial_election.votes.push_back({chain_order(m, v.ranking), mult});
            };
            add_complete(nb, {desc(lay.reds), {lay.q}, {lay.p}});
            add_complete(2 * l + kappa, {{lay.q}, desc(lay.reds), {lay.p}});
            add_complete(l + 2 * kappa + 1, {desc(lay.reds), {lay.p}, {lay.q}});
            add_complete(l + kappa, {{lay.p}, {lay.q}, desc(lay.reds)});
            break;
        }
        case ReductionId::pw_penultimate: {
            Layout lay = make_layout(g, true, true, false);
            out.is_partial = true;
            out.distinguished = lay.p;
            out.partial_election.labels = lay.labels;
            out.partial_agenda.order.push_back(lay.q2);
            for (int r : lay.reds) out.partial_agenda.order.push_back(r);
            out.partial_agenda.order.push_back(lay.p);
            out.partial_agenda.order.push_back(lay.q);

            const int m = static_cast<int>(lay.labels.size());
            out.element_kind = ReductionOutput::ElementKind::partial_vote;
            for (int b = 0; b < nb; ++b) {
                auto nbm = lay.neighbor_mask(g, b);
                std::vector<int> chain1 = excluding(asc(lay.reds), nbm);
                chain1.push_back(lay.q2);
                std::vector<int> chain2 = {lay.q, lay.p};
                auto neighbors = restricted(asc(lay.reds), nbm);
                chain2.insert(chain2.end(), neighbors.begin(), neighbors.end());
                PartialOrder po(m);
                auto add_chain = [&](const std::vector<int>& chain) {
                    for (size_t i = 0; i + 1 < chain.size(); ++i) po.set(chain[i], chain[i + 1]);
                };
                add_chain(chain1);
                add_chain(chain2);
                out.partial_election.votes.push_back({close_transitive(po), 1});
                out.blue_to_element.push_back(b);
            }
            auto add_complete = [&](int mult, std::initializer_list<std::vector<int>> segs) {
                Vote v = make_vote(mult, segs);
                out.partial_election.votes.push_back({chain_order(m, v.ranking), mult});
            };
            add_complete(nb + 1, {{lay.q2}, {lay.q}, asc(lay.reds), {lay.p}});
            add_complete(2 * kappa, {{lay.q}, {lay.p}, asc(lay.reds), {lay.q2}});
            add_complete(kappa, {{lay.q}, {lay.p}, {lay.q2}, asc(lay.reds)});
            add_complete(kappa, {asc(lay.reds), {lay.p}, {lay.q2}, {lay.q}});
            break;
        }
    }

    if (!out.is_partial) validate_control_instance(out.control);
    return out;
}

bool verify_certificate(const RbdsInstance& g, const ReductionOutput& out,
                        const std::vector<int>& blue_subset) {
    using EK = ReductionOutput::ElementKind;
    if (out.is_partial) {
        // Complete the per-blue ballots per the construction's yes-direction
        // templates; chosen blues get the q-first (pw-first) / q'-before-q
        // (pw-penultimate) completion.
        std::vector<char> chosen(g.blue_count(), 0);
        for (int b : blue_subset) chosen[b] = 1;
        Election completed;
        completed.labels = out.partial_election.labels;
        const int m = static_cast<int>(completed.labels.size());

        // Recover the layout from the agenda shape.
        Layout lay;
        lay.labels = completed.labels;
        if (out.which == ReductionId::pw_first) {
            lay.p = out.partial_agenda.order[0];
            lay.q = out.partial_agenda.order[1];
            lay.reds.assign(out.partial_agenda.order.begin() + 2, out.partial_agenda.order.end());
        } else {
            lay.q2 = out.partial_agenda.order[0];
            lay.p = out.partial_agenda.order[m - 2];
            lay.q = out.partial_agenda.order[m - 1];
            lay.reds.assign(out.partial_agenda.order.begin() + 1,
                            out.partial_agenda.order.end() - 2);
        }
        for (int b = 0; b < g.blue_count(); ++b) {
            auto nbm = lay.neighbor_mask(g, b);
            Vote v;
            if (out.which == ReductionId::pw_first) {
                v = chosen[b] ? make_vote(1, {{lay.q}, restricted(desc(lay.reds), nbm), {lay.p},
                                              excluding(desc(lay.reds), nbm)})
                              : make_vote(1, {restricted(desc(lay.reds), nbm), {lay.p}, {lay.q},
                                              excluding(desc(lay.reds), nbm)});
            } else {
                v = chosen[b]
                        ? make_vote(1, {excluding(asc(lay.reds), nbm), {lay.q2}, {lay.q}, {lay.p},
                                        restricted(asc(lay.reds), nbm)})
                        : make_vote(1, {{lay.q}, {lay.p}, excluding(asc(lay.reds), nbm), {lay.q2},
                                        restricted(asc(lay.reds), nbm)});
            }
            completed.votes.push_back(std::move(v));
        }
        for (size_t i = g.blue_count(); i < out.partial_election.votes.size(); ++i) {
            const PartialVote& pv = out.partial_election.votes[i];
            completed.votes.push_back({first_linear_extension(pv.order), pv.multiplicity});
        }
        return tsmr_winner(completed, out.partial_agenda) == out.distinguished;
    }

    // The dual constructions keep the chosen blues' ballots and delete the
    // complement's.
    const bool complement = out.which == ReductionId::ccdv_first_dual ||
                            out.which == ReductionId::ccdv_last_dual ||
                            out.which == ReductionId::dcdv_dual;
    std::vector<char> chosen(g.blue_count(), 0);
    for (int b : blue_subset) chosen[b] = 1;

    ControlSolution sol;
    for (int b = 0; b < g.blue_count(); ++b) {
        if (complement == static_cast<bool>(chosen[b])) continue;
        int elem = out.blue_to_element[b];
        switch (out.element_kind) {
            case EK::unregistered_vote: sol.added_votes.push_back(elem); break;
            case EK::registered_vote: sol.deleted_votes.push_back(elem); break;
            case EK::unregistered_candidate: sol.added_candidates.push_back(elem); break;
            case EK::partial_vote: return false;
        }
    }
    return verify_solution(out.control, sol);
}

std::string describe_rbds(const RbdsInstance& g) {
    std::ostringstream os;
    os << "R={";
    for (int r = 0; r < g.red_count(); ++r) os << (r ? " " : "") << g.red_labels[r];
    os << "} B={";
    for (int b = 0; b < g.blue_count(); ++b) os << (b ? " " : "") << g.blue_labels[b];
    os << "} edges={";
    bool first = true;
    for (int b = 0; b < g.blue_count(); ++b)
        for (int r : g.blue_adj[b]) {
            if (!first) os << " ";
            os << g.blue_labels[b] << "-" << g.red_labels[r];
            first = false;
        }
    os << "} kappa=" << g.kappa;
    return os.str();
}

namespace {

struct EnumCase {
    int reds, blues, kappa;
    unsigned mask;
};

RbdsInstance materialize(const EnumCase& c) {
    RbdsInstance g;
    for (int r = 0; r < c.reds; ++r) g.red_labels.push_back("r" + std::to_string(r + 1));
    for (int b = 0; b < c.blues; ++b) g.blue_labels.push_back("b" + std::to_string(b + 1));
    g.blue_adj.assign(c.blues, {});
    for (int b = 0; b < c.blues; ++b)
        for (int r = 0; r < c.reds; ++r)
            if (c.mask & (1u << (b * c.reds + r))) g.blue_adj[b].push_back(r);
    g.kappa = c.kappa;
    return g;
}

} // namespace

VerifyReport verify_reduction(ReductionId id, int max_red, int max_blue, int threads) {
    std::vector<EnumCase> cases;
    for (int reds = 0; reds <= max_red; ++reds)
        for (int blues = 1; blues <= max_blue; ++blues) {
            const unsigned masks = 1u << (reds * blues);
            for (unsigned mask = 0; mask < masks; ++mask)
                for (int kappa = 1; kappa <= blues; ++kappa)
                    cases.push_back({reds, blues, kappa, mask});
        }

    VerifyReport report;
    report.enumerated = static_cast<long long>(cases.size());

    std::mutex merge_mutex;
    std::atomic<size_t> next{0};
    long long first_mismatch_index = -1;

    auto worker = [&]() {
        VerifyReport local;
        long long local_first = -1;
        std::string local_desc;
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) break;
            RbdsInstance g = materialize(cases[i]);
            if (!reduction_precondition_violation(g, id).empty()) {
                ++local.filtered;
                continue;
            }
            bool expected, actual;
            try {
                expected = rbds_brute(g).has_value();
                ReductionOutput out = reduce(g, id);
                if (out.is_partial) {
                    actual = possible_winner_exact(out.partial_election,
                                                   to_partial_agenda(out.partial_agenda),
                                                   out.distinguished, {10000000});
                } else {
                    actual = solve_exact(out.control).has_value();
                }
            } catch (const cap_error&) {
                local.complete = false;
                continue;
            }
            ++local.checked;
            if (expected) ++local.yes_instances;
            if (expected != actual) {
                ++local.mismatches;
                if (local_first < 0 || static_cast<long long>(i) < local_first) {
                    local_first = static_cast<long long>(i);
                    local_desc = describe_rbds(g) +
                                 (expected ? " [rbds yes, target no]" : " [rbds no, target yes]");
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        report.filtered += local.filtered;
        report.checked += local.checked;
        report.yes_instances += local.yes_instances;
        report.mismatches += local.mismatches;
        report.complete = report.complete && local.complete;
        if (local_first >= 0 && (first_mismatch_index < 0 || local_first < first_mismatch_index)) {
            first_mismatch_index = local_first;
            report.first_counterexample = local_desc;
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return report;
}

} // namespace tsmr
