#ifndef TSMR_IO_HPP
#define TSMR_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsmr/control.hpp"
#include "tsmr/election.hpp"
#include "tsmr/reductions.hpp"

namespace tsmr {

struct Budgets {
    int av = 0, dv = 0, ac = 0, dc = 0;
};

/// Parsed election/control file. Candidate ids run over the full roster:
/// registered candidates first, unregistered after.
struct ElectionFile {
    std::vector<std::string> candidates;
    std::vector<std::string> unregistered_candidates;
    std::vector<Vote> votes;
    std::vector<Vote> uvotes;
    std::vector<PartialVote> pvotes;
    std::optional<Agenda> agenda;
    std::optional<PartialAgenda> pagenda;
    std::optional<int> distinguished;
    std::optional<Budgets> budgets;
    std::optional<ControlMode> mode;

    int roster_size() const {
        return static_cast<int>(candidates.size() + unregistered_candidates.size());
    }
    std::vector<std::string> roster() const;
    const std::string& label(int id) const;
    std::optional<int> id_of(const std::string& label) const;
};

ElectionFile parse_election_text(const std::string& text, const std::string& filename);
ElectionFile load_election_file(const std::string& path);
std::string serialize_election_file(const ElectionFile& f);

RbdsInstance parse_rbds_text(const std::string& text, const std::string& filename);
RbdsInstance load_rbds_file(const std::string& path);
std::string serialize_rbds_file(const RbdsInstance& g);

/// Comment stripping, whitespace collapsing, blank-line removal.
std::string normalize_text(const std::string& text);

/// Plain election view; rejects partial votes and control sections.
Election to_election(const ElectionFile& f);

/// Partial view: complete votes become maximal partial votes; rejects
/// control sections. The agenda (pagenda or complete agenda) is returned
/// separately via the out parameters.
PartialElection to_partial_election(const ElectionFile& f);

ControlInstance to_control_instance(const ElectionFile& f);

ElectionFile control_to_file(const ControlInstance& inst);
ElectionFile partial_to_file(const PartialElection& pe, const Agenda& agenda, int distinguished);
ElectionFile reduction_to_file(const ReductionOutput& out);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace tsmr

#endif
