#include "tsmr/control.hpp"

#include <algorithm>
#include <map>

#include "tsmr/errors.hpp"
#include "tsmr/rules.hpp"

namespace tsmr {

std::optional<Variant> variant_from_name(const std::string& name) {
    static const std::map<std::string, Variant> table = {
        {"ccav", Variant::ccav}, {"ccdv", Variant::ccdv}, {"ccac", Variant::ccac},
        {"ccdc", Variant::ccdc}, {"dcav", Variant::dcav}, {"dcdv", Variant::dcdv},
        {"dcac", Variant::dcac}, {"dcdc", Variant::dcdc}};
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::ccav: return "ccav";
        case Variant::ccdv: return "ccdv";
        case Variant::ccac: return "ccac";
        case Variant::ccdc: return "ccdc";
        case Variant::dcav: return "dcav";
        case Variant::dcdv: return "dcdv";
        case Variant::dcac: return "dcac";
        case Variant::dcdc: return "dcdc";
    }
    return "?";
}

bool variant_constructive(Variant v) {
    return v == Variant::ccav || v == Variant::ccdv || v == Variant::ccac || v == Variant::ccdc;
}

std::vector<int> ControlInstance::registered_candidates() const {
    std::vector<int> out;
    for (int c = 0; c < roster_size(); ++c)
        if (!unregistered[c]) out.push_back(c);
    return out;
}

std::vector<int> ControlInstance::unregistered_candidates() const {
    std::vector<int> out;
    for (int c = 0; c < roster_size(); ++c)
        if (unregistered[c]) out.push_back(c);
    return out;
}

ExpandedVotes expand_votes(const std::vector<Vote>& votes) {
    ExpandedVotes ev;
    std::map<std::vector<int>, int> last_seen;
    for (int vi = 0; vi < static_cast<int>(votes.size()); ++vi) {
        for (int copy = 0; copy < votes[vi].multiplicity; ++copy) {
            int idx = ev.size();
            auto it = last_seen.find(votes[vi].ranking);
            ev.prev_same.push_back(it == last_seen.end() ? -1 : it->second);
            last_seen[votes[vi].ranking] = idx;
            ev.rankings.push_back(votes[vi].ranking);
            ev.source.push_back(vi);
        }
    }
    return ev;
}

void validate_control_instance(const ControlInstance& inst) {
    const int m = inst.roster_size();
    if (m == 0) throw precondition_error("empty roster");
    if (static_cast<int>(inst.unregistered.size()) != m)
        throw precondition_error("registration mask size mismatch");
    if (inst.agenda.size() != m) throw precondition_error("agenda must order the full roster");
    if (inst.distinguished < 0 || inst.distinguished >= m ||
        inst.unregistered[inst.distinguished])
        throw precondition_error("distinguished candidate must be registered");
    auto check_votes = [&](const std::vector<Vote>& votes, const char* what) {
        for (const auto& v : votes) {
            if (v.multiplicity < 1) throw precondition_error(std::string(what) + ": multiplicity < 1");
            std::vector<char> seen(m, 0);
            if (static_cast<int>(v.ranking.size()) != m)
                throw precondition_error(std::string(what) + ": vote does not rank the full roster");
            for (int c : v.ranking) {
                if (c < 0 || c >= m || seen[c])
                    throw precondition_error(std::string(what) + ": vote is not a permutation");
                seen[c] = 1;
            }
        }
    };
    check_votes(inst.registered_votes, "registered vote");
    check_votes(inst.unregistered_votes, "unregistered vote");
    long long nv = 0, nw = 0;
    for (const auto& v : inst.registered_votes) nv += v.multiplicity;
    for (const auto& v : inst.unregistered_votes) nw += v.multiplicity;
    long long nd = inst.unregistered_candidates().size();
    if (inst.k_av < 0 || inst.k_av > nw) throw precondition_error("k_av out of range");
    if (inst.k_dv < 0 || inst.k_dv > nv) throw precondition_error("k_dv out of range");
    if (inst.k_ac < 0 || inst.k_ac > nd) throw precondition_error("k_ac out of range");
    if (inst.k_dc < 0 || inst.k_dc > m - nd) throw precondition_error("k_dc out of range");
}

std::string variant_pattern_violation(const ControlInstance& inst, Variant v) {
    const bool has_d = !inst.unregistered_candidates().empty();
    const bool has_w = !inst.unregistered_votes.empty();
    const bool constructive = inst.mode == ControlMode::constructive;
    if (constructive != variant_constructive(v)) return "mode does not match variant";
    switch (v) {
        case Variant::ccav:
        case Variant::dcav:
            if (inst.k_dv || inst.k_ac || inst.k_dc) return "only av budget may be nonzero";
            if (has_d) return "unregistered candidates not allowed";
            break;
        case Variant::ccac:
        case Variant::dcac:
            if (inst.k_av || inst.k_dv || inst.k_dc) return "only ac budget may be nonzero";
            if (has_w) return "unregistered votes not allowed";
            break;
        case Variant::ccdv:
        case Variant::dcdv:
            if (inst.k_av || inst.k_ac || inst.k_dc) return "only dv budget may be nonzero";
            if (has_d || has_w) return "unregistered candidates/votes not allowed";
            break;
        case Variant::ccdc:
        case Variant::dcdc:
            if (inst.k_av || inst.k_dv || inst.k_ac) return "only dc budget may be nonzero";
            if (has_d || has_w) return "unregistered candidates/votes not allowed";
            break;
    }
    return "";
}

namespace {

long long subsets_up_to(long long n, long long k, long long clamp) {
    long double total = 0, binom = 1;
    for (long long i = 0;; ++i) {
        total += binom;
        if (total >= static_cast<long double>(clamp)) return clamp;
        if (i >= std::min(n, k)) break;
        binom = binom * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    }
    return static_cast<long long>(total);
}

struct ExactSearch {
    const ControlInstance& inst;
    ExpandedVotes ev_v, ev_w;
    PairwiseTally t;
    std::vector<std::uint8_t> kept;
    std::vector<char> sel_v, sel_w;
    std::vector<int> cur_dv, cur_av, cur_dc, cur_ac;
    std::vector<int> deletable; // registered candidates except p
    std::vector<int> addable;   // unregistered candidates
    int size_dv = 0, size_av = 0, size_dc = 0, size_ac = 0;

    explicit ExactSearch(const ControlInstance& ci) : inst(ci), t(ci.roster_size()) {
        ev_v = expand_votes(ci.registered_votes);
        ev_w = expand_votes(ci.unregistered_votes);
        for (const auto& r : ev_v.rankings) t.add_vote(r, 1);
        kept.assign(ci.roster_size(), 0);
        for (int c = 0; c < ci.roster_size(); ++c) kept[c] = !ci.unregistered[c];
        sel_v.assign(ev_v.size(), 0);
        sel_w.assign(ev_w.size(), 0);
        for (int c = 0; c < ci.roster_size(); ++c) {
            if (ci.unregistered[c]) addable.push_back(c);
            else if (c != ci.distinguished) deletable.push_back(c);
        }
    }

    bool goal() {
        int w = tsmr_winner_on_tally(t, inst.agenda, &kept);
        return inst.mode == ControlMode::constructive ? w == inst.distinguished
                                                      : w != inst.distinguished;
    }

    bool pick_ac(int need, int from) {
        if (need == 0) return goal();
        for (int i = from; i + need <= static_cast<int>(addable.size()); ++i) {
            kept[addable[i]] = 1;
            cur_ac.push_back(addable[i]);
            if (pick_ac(need - 1, i + 1)) return true;
            cur_ac.pop_back();
            kept[addable[i]] = 0;
        }
        return false;
    }

    bool pick_dc(int need, int from) {
        if (need == 0) return pick_ac(size_ac, 0);
        for (int i = from; i + need <= static_cast<int>(deletable.size()); ++i) {
            kept[deletable[i]] = 0;
            cur_dc.push_back(deletable[i]);
            if (pick_dc(need - 1, i + 1)) return true;
            cur_dc.pop_back();
            kept[deletable[i]] = 1;
        }
        return false;
    }

    bool pick_av(int need, int from) {
        if (need == 0) return pick_dc(size_dc, 0);
        for (int i = from; i + need <= ev_w.size(); ++i) {
            if (ev_w.prev_same[i] >= 0 && !sel_w[ev_w.prev_same[i]]) continue;
            sel_w[i] = 1;
            t.add_vote(ev_w.rankings[i], 1);
            cur_av.push_back(i);
            if (pick_av(need - 1, i + 1)) return true;
            cur_av.pop_back();
            t.remove_vote(ev_w.rankings[i], 1);
            sel_w[i] = 0;
        }
        return false;
    }

    bool pick_dv(int need, int from) {
        if (need == 0) return pick_av(size_av, 0);
        for (int i = from; i + need <= ev_v.size(); ++i) {
            if (ev_v.prev_same[i] >= 0 && !sel_v[ev_v.prev_same[i]]) continue;
            sel_v[i] = 1;
            t.remove_vote(ev_v.rankings[i], 1);
            cur_dv.push_back(i);
            if (pick_dv(need - 1, i + 1)) return true;
            cur_dv.pop_back();
            t.add_vote(ev_v.rankings[i], 1);
            sel_v[i] = 0;
        }
        return false;
    }

    std::optional<ControlSolution> run() {
        const int budget_total = inst.k_dv + inst.k_av + inst.k_dc + inst.k_ac;
        for (int total = 0; total <= budget_total; ++total)
            for (int dv = 0; dv <= std::min(inst.k_dv, total); ++dv)
                for (int av = 0; av <= std::min(inst.k_av, total - dv); ++av)
                    for (int dc = 0; dc <= std::min(inst.k_dc, total - dv - av); ++dc) {
                        int ac = total - dv - av - dc;
                        if (ac > inst.k_ac) continue;
                        size_dv = dv;
                        size_av = av;
                        size_dc = dc;
                        size_ac = ac;
                        if (pick_dv(dv, 0)) {
                            ControlSolution sol;
                            sol.deleted_votes = cur_dv;
                            sol.added_votes = cur_av;
                            sol.deleted_candidates = cur_dc;
                            sol.added_candidates = cur_ac;
                            return sol;
                        }
                    }
        return std::nullopt;
    }
};

} // namespace

std::optional<ControlSolution> solve_exact(const ControlInstance& inst, long long cap) {
    validate_control_instance(inst);
    ExpandedVotes ev_v = expand_votes(inst.registered_votes);
    ExpandedVotes ev_w = expand_votes(inst.unregistered_votes);
    const std::pair<long long, long long> dims[] = {
        {ev_v.size(), inst.k_dv},
        {ev_w.size(), inst.k_av},
        {static_cast<long long>(inst.registered_candidates().size()) - 1, inst.k_dc},
        {static_cast<long long>(inst.unregistered_candidates().size()), inst.k_ac}};
    long long space = 1;
    for (auto [n, k] : dims) {
        long long dim = subsets_up_to(n, k, cap + 1);
        if (space > (cap + 1) / std::max<long long>(dim, 1)) space = cap + 1;
        else space *= dim;
    }
    if (space > cap)
        throw cap_error("instance too large for exact solver: subset space exceeds " +
                        std::to_string(cap));
    ExactSearch search(inst);
    return search.run();
}

bool verify_solution(const ControlInstance& inst, const ControlSolution& sol) {
    if (static_cast<int>(sol.deleted_votes.size()) > inst.k_dv) return false;
    if (static_cast<int>(sol.added_votes.size()) > inst.k_av) return false;
    if (static_cast<int>(sol.deleted_candidates.size()) > inst.k_dc) return false;
    if (static_cast<int>(sol.added_candidates.size()) > inst.k_ac) return false;

    ExpandedVotes ev_v = expand_votes(inst.registered_votes);
    ExpandedVotes ev_w = expand_votes(inst.unregistered_votes);
    std::vector<char> del_v(ev_v.size(), 0), add_w(ev_w.size(), 0);
    for (int i : sol.deleted_votes) {
        if (i < 0 || i >= ev_v.size() || del_v[i]) return false;
        del_v[i] = 1;
    }
    for (int i : sol.added_votes) {
        if (i < 0 || i >= ev_w.size() || add_w[i]) return false;
        add_w[i] = 1;
    }

    const int m = inst.roster_size();
    std::vector<char> keep(m, 0);
    for (int c = 0; c < m; ++c) keep[c] = !inst.unregistered[c];
    for (int c : sol.deleted_candidates) {
        if (c < 0 || c >= m || inst.unregistered[c] || c == inst.distinguished || !keep[c])
            return false;
        keep[c] = 0;
    }
    for (int c : sol.added_candidates) {
        if (c < 0 || c >= m || !inst.unregistered[c] || keep[c]) return false;
        keep[c] = 1;
    }

    Election full;
    full.labels = inst.labels;
    for (int i = 0; i < ev_v.size(); ++i)
        if (!del_v[i]) full.votes.push_back({ev_v.rankings[i], 1});
    for (int i = 0; i < ev_w.size(); ++i)
        if (add_w[i]) full.votes.push_back({ev_w.rankings[i], 1});

    std::vector<int> kept_ids;
    for (int c = 0; c < m; ++c)
        if (keep[c]) kept_ids.push_back(c);
    Restriction r = restrict(full, kept_ids);
    Agenda ra = restrict_agenda(inst.agenda, kept_ids);
    int new_p = static_cast<int>(std::lower_bound(r.kept.begin(), r.kept.end(),
                                                  inst.distinguished) -
                                 r.kept.begin());
    int w = tsmr_winner(r.election, ra);
    return inst.mode == ControlMode::constructive ? w == new_p : w != new_p;
}

std::vector<int> ccdc_forced_deletions(const Election& e, int p, const Agenda& a) {
    const int m = e.candidate_count();
    PairwiseTally t = tally(e);
    std::vector<int> pos = a.positions();
    std::vector<char> deleted(m, 0);
    for (int c = 0; c < m; ++c)
        if (c != p && pos[c] < pos[p] && t.beats(c, p)) deleted[c] = 1;
    for (int i = pos[p] + 1; i < m; ++i) {
        const int c = a.order[i];
        bool beaten = false;
        for (int j = 0; j < i && !beaten; ++j) {
            const int d = a.order[j];
            beaten = !deleted[d] && t.beats(d, c);
        }
        if (!beaten) deleted[c] = 1;
    }
    std::vector<int> out;
    for (int c = 0; c < m; ++c)
        if (deleted[c]) out.push_back(c);
    return out;
}

std::optional<ControlSolution> ccdc_greedy(const Election& e, int p, const Agenda& a, int k) {
    std::vector<int> forced = ccdc_forced_deletions(e, p, a);
    if (static_cast<int>(forced.size()) > k) return std::nullopt;
    ControlSolution sol;
    sol.deleted_candidates = std::move(forced);
    return sol;
}

std::optional<ControlSolution> dcdc(const Election& e, int p, const Agenda& a, int k) {
    const int m = e.candidate_count();
    std::optional<ControlSolution> best;
    for (int rival = 0; rival < m; ++rival) {
        if (rival == p) continue;
        std::vector<int> forced = ccdc_forced_deletions(e, rival, a);
        if (std::find(forced.begin(), forced.end(), p) != forced.end()) continue;
        if (static_cast<int>(forced.size()) > k) continue;
        if (!best || forced.size() < best->deleted_candidates.size()) {
            ControlSolution sol;
            sol.deleted_candidates = std::move(forced);
            best = std::move(sol);
        }
    }
    return best;
}

std::optional<ControlSolution> dcac(const ControlInstance& inst) {
    validate_control_instance(inst);
    if (inst.mode != ControlMode::destructive) throw precondition_error("dcac requires destructive mode");
    if (!inst.unregistered_votes.empty()) throw precondition_error("dcac takes no unregistered votes");

    PairwiseTally t(inst.roster_size());
    for (const auto& v : inst.registered_votes) t.add_vote(v.ranking, v.multiplicity);
    std::vector<std::uint8_t> kept(inst.roster_size(), 0);
    for (int c = 0; c < inst.roster_size(); ++c) kept[c] = !inst.unregistered[c];

    const int p = inst.distinguished;
    if (tsmr_winner_on_tally(t, inst.agenda, &kept) != p) return ControlSolution{};
    if (inst.k_ac == 0) return std::nullopt;

    std::vector<int> pos = inst.agenda.positions();
    for (int d : inst.unregistered_candidates()) {
        if (pos[d] < pos[p] && t.beats(d, p)) {
            ControlSolution sol;
            sol.added_candidates = {d};
            return sol;
        }
        if (pos[d] > pos[p]) {
            bool beaten = false;
            for (int c : inst.registered_candidates())
                if (pos[c] < pos[d] && t.beats(c, d)) { beaten = true; break; }
            if (!beaten) {
                ControlSolution sol;
                sol.added_candidates = {d};
                return sol;
            }
        }
    }
    return std::nullopt;
}

std::optional<ControlSolution> destructive_votes_p_last(const ControlInstance& inst) {
    validate_control_instance(inst);
    if (inst.mode != ControlMode::destructive)
        throw precondition_error("p-last vote control requires destructive mode");
    if (!inst.unregistered_candidates().empty() || inst.k_ac || inst.k_dc)
        throw precondition_error("p-last vote control takes no candidate changes");
    if (inst.k_av > 0 && inst.k_dv > 0)
        throw precondition_error("p-last vote control: at most one vote budget may be nonzero");
    const int p = inst.distinguished;
    if (inst.agenda.order.back() != p) throw precondition_error("precondition: p last");

    const int m = inst.roster_size();
    PairwiseTally t(m);
    for (const auto& v : inst.registered_votes) t.add_vote(v.ranking, v.multiplicity);

    // p last wins iff unbeaten, so p loses iff some rival's margin over p
    // turns positive.
    for (int c = 0; c < m; ++c)
        if (c != p && t.at(c, p) > t.at(p, c)) return ControlSolution{};

    const bool adding = inst.k_av > 0;
    const int k = adding ? inst.k_av : inst.k_dv;
    ExpandedVotes ev = expand_votes(adding ? inst.unregistered_votes : inst.registered_votes);
    std::vector<int> rank_pos(m);
    for (int c = 0; c < m; ++c) {
        if (c == p) continue;
        long long margin = t.at(c, p) - t.at(p, c); // <= 0 here
        long long need = 1 - margin;
        if (need > k) continue;
        std::vector<int> picks;
        for (int i = 0; i < ev.size() && static_cast<long long>(picks.size()) < need; ++i) {
            for (int r = 0; r < m; ++r) rank_pos[ev.rankings[i][r]] = r;
            const bool c_above_p = rank_pos[c] < rank_pos[p];
            if (adding ? c_above_p : !c_above_p) picks.push_back(i);
        }
        if (static_cast<long long>(picks.size()) == need) {
            ControlSolution sol;
            (adding ? sol.added_votes : sol.deleted_votes) = std::move(picks);
            return sol;
        }
    }
    return std::nullopt;
}

bool ccac_immunity_check(const ControlInstance& inst, int max_d) {
    validate_control_instance(inst);
    if (!inst.unregistered_votes.empty())
        throw precondition_error("candidate control takes no unregistered votes");
    const int p = inst.distinguished;
    if (inst.agenda.order.back() != p) throw precondition_error("precondition: p last");
    std::vector<int> d_ids = inst.unregistered_candidates();
    if (static_cast<int>(d_ids.size()) > max_d)
        throw cap_error("immunity check cap: |D| exceeds " + std::to_string(max_d));

    PairwiseTally t(inst.roster_size());
    for (const auto& v : inst.registered_votes) t.add_vote(v.ranking, v.multiplicity);
    std::vector<std::uint8_t> kept(inst.roster_size(), 0);
    for (int c = 0; c < inst.roster_size(); ++c) kept[c] = !inst.unregistered[c];

    if (tsmr_winner_on_tally(t, inst.agenda, &kept) == p) return true;
    for (unsigned mask = 1; mask < (1u << d_ids.size()); ++mask) {
        std::vector<std::uint8_t> k2 = kept;
        for (size_t i = 0; i < d_ids.size(); ++i)
            if (mask & (1u << i)) k2[d_ids[i]] = 1;
        if (tsmr_winner_on_tally(t, inst.agenda, &k2) == p) return false;
    }
    return true;
}

} // namespace tsmr
