#ifndef TSMR_REDUCTIONS_HPP
#define TSMR_REDUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsmr/control.hpp"
#include "tsmr/election.hpp"

namespace tsmr {

/// Bipartite domination instance: choose kappa blue vertices covering all reds.
struct RbdsInstance {
    std::vector<std::string> red_labels;
    std::vector<std::string> blue_labels;
    std::vector<std::vector<int>> blue_adj; // per blue, sorted red indices
    int kappa = 1;

    int red_count() const { return static_cast<int>(red_labels.size()); }
    int blue_count() const { return static_cast<int>(blue_labels.size()); }
    std::vector<int> red_degrees() const;
    bool blue_dominates(int b, int r) const;
};

void validate_rbds(const RbdsInstance& g);

/// Lexicographically first kappa-subset of blues dominating all reds.
/// Throws cap_error when |B| > cap_blues.
std::optional<std::vector<int>> rbds_brute(const RbdsInstance& g, int cap_blues = 20);

/// Pads low-degree reds with fresh degree-1 blues until the red side is
/// regular (degree = current max). Yes/no-equivalent: a minimum dominating
/// set never needs the fresh blues. Throws on isolated reds.
RbdsInstance normalize_rbds(const RbdsInstance& g);

/// Election whose majority graph equals `target_arcs` exactly: per arc (a,b),
/// one ballot a,b,rest-ascending and one ballot rest-descending,a,b.
Election mcgarvey(const std::vector<std::string>& labels,
                  const std::vector<std::pair<int, int>>& target_arcs);

enum class ReductionId {
    ccav_first,
    ccav_last,
    ccdv_first_k,
    ccdv_first_dual,
    ccdv_last_k,
    ccdv_last_dual,
    ccac_first,
    dcav_nonlast,
    dcdv_k,
    dcdv_dual,
    pw_first,
    pw_penultimate,
};

constexpr int kReductionCount = 12;
std::optional<ReductionId> reduction_from_name(const std::string& name);
std::string reduction_name(ReductionId id);
const std::vector<ReductionId>& all_reductions();

/// Theorem preconditions: regular red side, minimum kappa, isolated vertices,
/// minimum red degree.
struct ReductionPreconditions {
    bool needs_regular_reds = false;
    bool needs_no_isolated = false;
    int min_kappa = 1;
    int min_degree = 1;
};
ReductionPreconditions reduction_preconditions(ReductionId id);

/// Empty when the instance satisfies the theorem's assumptions, else the
/// violated assumption.
std::string reduction_precondition_violation(const RbdsInstance& g, ReductionId id);

struct ReductionOutput {
    ReductionId which = ReductionId::ccav_first;
    bool is_partial = false;

    ControlInstance control; // control reductions

    PartialElection partial_election; // possible-winner reductions
    Agenda partial_agenda;            // complete for both constructions
    int distinguished = 0;

    enum class ElementKind { unregistered_vote, registered_vote, unregistered_candidate, partial_vote };
    ElementKind element_kind = ElementKind::unregistered_vote;
    /// Per blue vertex, the solution element its certificate maps to
    /// (expanded vote index, candidate id, or partial-vote index).
    std::vector<int> blue_to_element;
};

/// Compiles the RBDS instance into the theorem's election instance.
/// Throws precondition_error naming the violated assumption.
ReductionOutput reduce(const RbdsInstance& g, ReductionId id);

/// Forward certificate check: maps a dominating blue subset to the
/// construction's solution and re-verifies it on the target instance.
bool verify_certificate(const RbdsInstance& g, const ReductionOutput& out,
                        const std::vector<int>& blue_subset);

struct VerifyReport {
    long long enumerated = 0;
    long long filtered = 0;
    long long checked = 0;
    long long yes_instances = 0;
    long long mismatches = 0;
    bool complete = true;
    std::string first_counterexample;
};

/// Enumerates every bipartite graph with |R| <= max_red, 1 <= |B| <= max_blue
/// and every valid kappa; for instances meeting the theorem's preconditions,
/// checks that RBDS solvability equals the reduced instance's verdict under
/// the exact solver. `threads` <= 1 runs sequentially.
VerifyReport verify_reduction(ReductionId id, int max_red, int max_blue, int threads = 1);

std::string describe_rbds(const RbdsInstance& g);

} // namespace tsmr

#endif
