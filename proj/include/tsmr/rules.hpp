#ifndef TSMR_RULES_HPP
#define TSMR_RULES_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsmr/election.hpp"

namespace tsmr {

enum class RuleId { tsmr, successive, amendment };

std::optional<RuleId> rule_from_name(const std::string& name);
std::string rule_name(RuleId rule);

/// Two-stage majoritarian winner: among candidates with no in-neighbor in the
/// forward majority graph, the one latest in the agenda.
int tsmr_winner(const Election& e, const Agenda& a);

/// Same rule evaluated straight off a tally; `keep` (optional) masks the
/// roster, with the agenda read through the mask. Used by the exact solvers
/// so candidate deletion never re-materializes ballots.
int tsmr_winner_on_tally(const PairwiseTally& t, const Agenda& a,
                         const std::vector<std::uint8_t>* keep = nullptr);

/// First agenda candidate ranked above all her agenda-successors by a strict
/// majority of whole ballots. Throws precondition_error when n = 0.
int successive_winner(const Election& e, const Agenda& a);

/// Pairwise knockout along the agenda; the incumbent survives a round only by
/// strictly beating the challenger, so ties advance the challenger.
int amendment_winner(const Election& e, const Agenda& a);

int winner(RuleId rule, const Election& e, const Agenda& a);

std::optional<int> condorcet_winner(const Election& e);
std::vector<int> weak_condorcet_winners(const Election& e);

std::optional<int> condorcet_winner(const PairwiseTally& t);
std::vector<int> weak_condorcet_winners(const PairwiseTally& t);

} // namespace tsmr

#endif
