#ifndef TSMR_CONTROL_HPP
#define TSMR_CONTROL_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsmr/election.hpp"

namespace tsmr {

enum class ControlMode { constructive, destructive };

/// The eight zero-budget special cases of multimode control.
enum class Variant { ccav, ccdv, ccac, ccdc, dcav, dcdv, dcac, dcdc };

std::optional<Variant> variant_from_name(const std::string& name);
std::string variant_name(Variant v);
bool variant_constructive(Variant v);

/// Multimode control instance. The roster is C ∪ D with `unregistered[c]`
/// marking D; all votes (registered and unregistered) rank the full roster
/// and the agenda orders the full roster.
struct ControlInstance {
    std::vector<std::string> labels;
    std::vector<std::uint8_t> unregistered;
    std::vector<Vote> registered_votes;   // V
    std::vector<Vote> unregistered_votes; // W
    Agenda agenda;
    int distinguished = 0;
    int k_av = 0, k_dv = 0, k_ac = 0, k_dc = 0;
    ControlMode mode = ControlMode::constructive;

    int roster_size() const { return static_cast<int>(labels.size()); }
    std::vector<int> registered_candidates() const;
    std::vector<int> unregistered_candidates() const;
};

/// Vote indices refer to multiplicity-expanded copies: a multiplicity-k
/// ballot contributes k individually selectable copies.
struct ControlSolution {
    std::vector<int> deleted_votes;
    std::vector<int> added_votes;
    std::vector<int> deleted_candidates;
    std::vector<int> added_candidates;

    int total() const {
        return static_cast<int>(deleted_votes.size() + added_votes.size() +
                                deleted_candidates.size() + added_candidates.size());
    }
};

struct ExpandedVotes {
    std::vector<std::vector<int>> rankings;
    std::vector<int> source;    // owning Vote index
    std::vector<int> prev_same; // previous copy with identical ranking, or -1
    int size() const { return static_cast<int>(rankings.size()); }
};

ExpandedVotes expand_votes(const std::vector<Vote>& votes);

/// Throws precondition_error on budget/roster violations.
void validate_control_instance(const ControlInstance& inst);

/// Non-empty description when the instance does not match the variant's
/// zero-budget pattern; empty when it does.
std::string variant_pattern_violation(const ControlInstance& inst, Variant v);

/// Exhaustive multimode solver. Enumerates (V',W',C',D') by total
/// modification count ascending, then size-tuple and subsets
/// lexicographically, so the first hit is canonical. Equal ballots are only
/// picked as earliest-copy prefixes, which preserves the canonical answer.
/// Throws cap_error when the subset space exceeds `cap`.
std::optional<ControlSolution> solve_exact(const ControlInstance& inst, long long cap = 10000000);

/// Applies the solution and recomputes the winner on the restricted election;
/// true iff the mode's goal holds and the solution respects the budgets.
bool verify_solution(const ControlInstance& inst, const ControlSolution& sol);

/// Constructive control by deleting candidates: delete all p-beating agenda
/// predecessors of p, then every successor left unbeaten by its remaining
/// predecessors. The deletion set is forced, hence minimum.
std::optional<ControlSolution> ccdc_greedy(const Election& e, int p, const Agenda& a, int k);

/// Deletion set the greedy would use, regardless of any budget.
std::vector<int> ccdc_forced_deletions(const Election& e, int p, const Agenda& a);

/// Destructive control by deleting candidates: try every rival as the new
/// winner via the constructive greedy, rejecting rivals whose forced set
/// contains p; returns the minimum-deletion rival's solution.
std::optional<ControlSolution> dcdc(const Election& e, int p, const Agenda& a, int k);

/// Destructive control by adding candidates: when p currently wins, a single
/// unregistered candidate suffices iff it precedes p and beats p, or succeeds
/// p and is unbeaten by its registered predecessors.
std::optional<ControlSolution> dcac(const ControlInstance& inst);

/// Destructive vote control when p is last: p loses iff some rival beats p,
/// so per rival, add unregistered votes ranking the rival above p (DCAV) or
/// delete registered votes ranking p above the rival (DCDV) until the margin
/// flips. Throws precondition_error when p is not last.
std::optional<ControlSolution> destructive_votes_p_last(const ControlInstance& inst);

/// True iff no subset of unregistered candidates turns non-winner p into the
/// winner, given p last in the agenda. Throws cap_error when |D| > max_d.
bool ccac_immunity_check(const ControlInstance& inst, int max_d = 12);

} // namespace tsmr

#endif
