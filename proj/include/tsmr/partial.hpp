#ifndef TSMR_PARTIAL_HPP
#define TSMR_PARTIAL_HPP

#include "tsmr/election.hpp"

namespace tsmr {

struct CompletionBudget {
    long long max_completions = 1000000;
};

/// True iff p wins every completion of the votes under every linear extension
/// of the partial agenda. Two-phase check: can some possible predecessor be
/// completed to beat p, and can some possible successor be completed so that
/// none of its forced predecessors (nor p) beats it.
bool necessary_winner(const PartialElection& pe, const PartialAgenda& pa, int p);

/// Exhaustive completion search; throws cap_error (with the computed count)
/// when (product of per-ballot extension counts) x (agenda extension count)
/// exceeds the budget.
bool possible_winner_exact(const PartialElection& pe, const PartialAgenda& pa, int p,
                           CompletionBudget budget = {});

/// Polynomial special case: complete agenda ending at p. One completion that
/// places p as high as every ballot allows simultaneously maximizes p's score
/// against every rival, so p possibly wins iff p is a weak Condorcet winner
/// of that completion. Throws precondition_error when p is not last.
bool possible_winner_p_last(const PartialElection& pe, const Agenda& a, int p);

/// Number of vote-completion x agenda-extension pairs, clamped.
long long completion_count(const PartialElection& pe, const PartialAgenda& pa, long long clamp);

PartialAgenda to_partial_agenda(const Agenda& a);
PartialElection to_partial_election(const Election& e);

} // namespace tsmr

#endif
