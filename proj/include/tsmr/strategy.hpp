#ifndef TSMR_STRATEGY_HPP
#define TSMR_STRATEGY_HPP

#include <optional>

#include "tsmr/election.hpp"

namespace tsmr {

struct AgendaControlAnswer {
    bool feasible = false;
    std::optional<Agenda> witness;
};

/// Decides whether some agenda makes p the winner, by layered construction:
/// all non-beaters of p first, then p, then repeated out-neighbor waves of
/// the placed set. Feasible iff every candidate gets placed; the witness is
/// the built agenda, re-checked before returning.
AgendaControlAnswer agenda_control(const Election& e, int p);

/// Enumerates all m! agendas; throws cap_error when m > max_m.
bool agenda_control_oracle(const Election& e, int p, int max_m = 8);

struct ManipulationAnswer {
    bool feasible = false;
    std::optional<Vote> witness; // k identical ballots as one multiplicity-k vote
};

/// k coordinated ballots all equal to the canonical ballot: p first, then p's
/// agenda-predecessors in agenda order, then p's successors in agenda order.
/// Feasible iff p wins after appending the k copies.
ManipulationAnswer coalition_manipulation(const Election& e, int p, const Agenda& a, int k);

/// Enumerates all multisets of k ballots; throws cap_error when (m!)^k > cap.
bool manipulation_oracle(const Election& e, int p, const Agenda& a, int k,
                         long long cap = 1000000);

} // namespace tsmr

#endif
