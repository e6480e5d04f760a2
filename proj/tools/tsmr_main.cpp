#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsmr/control.hpp"
#include "tsmr/election.hpp"
#include "tsmr/errors.hpp"
#include "tsmr/io.hpp"
#include "tsmr/partial.hpp"
#include "tsmr/reductions.hpp"
#include "tsmr/rules.hpp"
#include "tsmr/strategy.hpp"

using namespace tsmr;

namespace {

// yes/success = 0, no/infeasible = 1, usage or parse = 2, cap = 3,
// witness self-check failure = 4.
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitAlarm = 4;

struct RunReport {
    std::string command;
    std::string verdict;
    std::vector<std::string> witness;
    std::vector<std::string> output; // non-witness result lines
    nlohmann::json stats = nlohmann::json::object();
    long long time_ms = 0;
};

void print_report(const RunReport& r, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["command"] = r.command;
        j["verdict"] = r.verdict;
        if (!r.witness.empty()) j["witness"] = r.witness;
        if (!r.output.empty()) j["output"] = r.output;
        j["stats"] = r.stats;
        j["time_ms"] = r.time_ms;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& line : r.output) std::cout << line << "\n";
    for (const auto& line : r.witness) std::cout << line << "\n";
    std::ostringstream stat;
    for (auto it = r.stats.begin(); it != r.stats.end(); ++it)
        stat << " " << it.key() << "=" << it.value().dump();
    std::cout << "# " << r.command << " | verdict=" << r.verdict << " | time_ms=" << r.time_ms
              << stat.str() << "\n";
}

std::string join_command(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

void stat_file(RunReport& report, const ElectionFile& f) {
    report.stats["m"] = f.roster_size();
    long long n = 0;
    for (const auto& v : f.votes) n += v.multiplicity;
    for (const auto& pv : f.pvotes) n += pv.multiplicity;
    report.stats["n"] = n;
    if (f.budgets)
        report.stats["budgets"] = {{"av", f.budgets->av},
                                   {"dv", f.budgets->dv},
                                   {"ac", f.budgets->ac},
                                   {"dc", f.budgets->dc}};
}

int resolve_target(const ElectionFile& f, const std::string& target_label) {
    if (!target_label.empty()) {
        auto id = f.id_of(target_label);
        if (!id) throw parse_error("unknown candidate '" + target_label + "'");
        return *id;
    }
    if (!f.distinguished) throw parse_error("distinguished candidate required (--target)");
    return *f.distinguished;
}

std::string format_ballot(const ElectionFile& f, const std::vector<int>& ranking) {
    std::string out;
    for (size_t i = 0; i < ranking.size(); ++i) {
        if (i) out += " > ";
        out += f.label(ranking[i]);
    }
    return out;
}

std::string format_agenda(const Election& e, const Agenda& a) {
    std::string out;
    for (size_t i = 0; i < a.order.size(); ++i) {
        if (i) out += ' ';
        out += e.labels[a.order[i]];
    }
    return out;
}

[[noreturn]] void alarm(const std::string& what) {
    std::cerr << "internal consistency alarm: " << what << "\n";
    std::exit(kExitAlarm);
}

int worker_threads() {
    const char* env = std::getenv("TSMR_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

struct Options {
    std::string file, out_file;
    std::string rule = "tsmr";
    std::string target;
    std::string variant;
    std::string theorem;
    bool all_agendas = false;
    bool exact = false;
    bool normalize = false;
    int k = -1;
    long long cap = -1;
    long long budget = 1000000;
    int max_red = 3, max_blue = 4;
};

int cmd_winner(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    Election e = to_election(f);
    auto rule = rule_from_name(opt.rule);
    if (!rule) throw parse_error("unknown rule '" + opt.rule + "'");
    if (opt.all_agendas) {
        long long cap_m = opt.cap > 0 ? opt.cap : 8;
        if (e.candidate_count() > cap_m)
            throw cap_error("agenda enumeration cap: m = " + std::to_string(e.candidate_count()) +
                            " exceeds " + std::to_string(cap_m));
        std::vector<int> order(e.candidate_count());
        for (int i = 0; i < e.candidate_count(); ++i) order[i] = i;
        do {
            Agenda a{order};
            report.output.push_back(format_agenda(e, a) + ": " + e.labels[winner(*rule, e, a)]);
        } while (std::next_permutation(order.begin(), order.end()));
        report.verdict = "ok";
        return kExitYes;
    }
    if (!f.agenda) throw parse_error("agenda required");
    int w = winner(*rule, e, *f.agenda);
    report.output.push_back(e.labels[w]);
    report.verdict = e.labels[w];
    return kExitYes;
}

int cmd_agenda_control(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    Election e = to_election(f);
    int p = resolve_target(f, opt.target);
    AgendaControlAnswer ans = agenda_control(e, p);
    if (!ans.feasible) {
        report.verdict = "infeasible";
        report.output.push_back("infeasible");
        return kExitNo;
    }
    if (tsmr_winner(e, *ans.witness) != p) alarm("agenda-control witness fails recheck");
    report.verdict = "feasible";
    report.witness.push_back(format_agenda(e, *ans.witness));
    return kExitYes;
}

int cmd_manipulate(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    Election e = to_election(f);
    if (!f.agenda) throw parse_error("agenda required");
    int p = resolve_target(f, opt.target);
    if (opt.k < 1) throw parse_error("-k must be a positive integer");
    ManipulationAnswer ans = coalition_manipulation(e, p, *f.agenda, opt.k);
    if (ans.feasible) {
        Election check = e;
        check.votes.push_back(*ans.witness);
        if (tsmr_winner(check, *f.agenda) != p) alarm("manipulation witness fails recheck");
        report.verdict = "feasible";
        report.witness.push_back(std::to_string(opt.k) + " x " +
                                 format_ballot(f, ans.witness->ranking));
        return kExitYes;
    }
    report.verdict = "infeasible";
    report.output.push_back("infeasible");
    return kExitNo;
}

int cmd_control(const Options& opt, RunReport& report) {
    auto variant = variant_from_name(opt.variant);
    if (!variant) throw parse_error("unknown variant '" + opt.variant + "'");
    ElectionFile f = load_election_file(opt.file);
    ControlInstance inst = to_control_instance(f);
    inst.distinguished = resolve_target(f, opt.target);
    ControlMode mode = variant_constructive(*variant) ? ControlMode::constructive
                                                      : ControlMode::destructive;
    if (f.mode && *f.mode != mode) throw parse_error("file mode does not match variant");
    inst.mode = mode;
    if (opt.k >= 0) {
        switch (*variant) {
            case Variant::ccav: case Variant::dcav: inst.k_av = opt.k; break;
            case Variant::ccdv: case Variant::dcdv: inst.k_dv = opt.k; break;
            case Variant::ccac: case Variant::dcac: inst.k_ac = opt.k; break;
            case Variant::ccdc: case Variant::dcdc: inst.k_dc = opt.k; break;
        }
    }
    {
        std::string violation = variant_pattern_violation(inst, *variant);
        if (!violation.empty())
            throw parse_error("instance does not fit " + opt.variant + ": " + violation);
    }
    validate_control_instance(inst);
    report.stats["m"] = inst.roster_size();
    report.stats["budgets"] = {{"av", inst.k_av}, {"dv", inst.k_dv},
                               {"ac", inst.k_ac}, {"dc", inst.k_dc}};
    {
        long long n = 0;
        for (const auto& v : inst.registered_votes) n += v.multiplicity;
        report.stats["n"] = n;
    }

    std::optional<ControlSolution> sol;
    std::string solver = "exact";
    if (opt.exact) {
        sol = solve_exact(inst, opt.cap > 0 ? opt.cap : 10000000);
    } else if (*variant == Variant::ccdc || *variant == Variant::dcdc) {
        Election e;
        e.labels = inst.labels;
        e.votes = inst.registered_votes;
        sol = *variant == Variant::ccdc
                  ? ccdc_greedy(e, inst.distinguished, inst.agenda, inst.k_dc)
                  : dcdc(e, inst.distinguished, inst.agenda, inst.k_dc);
        solver = "greedy";
    } else if (*variant == Variant::dcac) {
        sol = dcac(inst);
        solver = "single-addition";
    } else if ((*variant == Variant::dcav || *variant == Variant::dcdv) &&
               inst.agenda.order.back() == inst.distinguished) {
        sol = destructive_votes_p_last(inst);
        solver = "p-last";
    } else {
        sol = solve_exact(inst, opt.cap > 0 ? opt.cap : 10000000);
    }
    report.stats["solver"] = solver;

    if (!sol) {
        report.verdict = "infeasible";
        report.output.push_back("infeasible");
        return kExitNo;
    }
    if (!verify_solution(inst, *sol)) alarm("control solution fails recheck");
    report.verdict = "feasible";
    ExpandedVotes ev = expand_votes(inst.registered_votes);
    ExpandedVotes ew = expand_votes(inst.unregistered_votes);
    for (int i : sol->deleted_votes)
        report.witness.push_back("delete vote: " + format_ballot(f, ev.rankings[i]));
    for (int i : sol->added_votes)
        report.witness.push_back("add vote: " + format_ballot(f, ew.rankings[i]));
    for (int c : sol->deleted_candidates)
        report.witness.push_back("delete candidate: " + f.label(c));
    for (int c : sol->added_candidates)
        report.witness.push_back("add candidate: " + f.label(c));
    if (sol->total() == 0) report.witness.push_back("no changes needed");
    return kExitYes;
}

int cmd_possible(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    PartialElection pe = to_partial_election(f);
    int p = resolve_target(f, opt.target);
    bool yes;
    if (f.agenda && f.agenda->order.back() == p) {
        yes = possible_winner_p_last(pe, *f.agenda, p);
        report.stats["solver"] = "p-last";
    } else {
        PartialAgenda pa = f.pagenda ? *f.pagenda
                                     : (f.agenda ? to_partial_agenda(*f.agenda)
                                                 : PartialAgenda(pe.candidate_count()));
        yes = possible_winner_exact(pe, pa, p, {opt.budget});
        report.stats["solver"] = "exact";
        report.stats["budget"] = opt.budget;
    }
    report.verdict = yes ? "possible" : "not possible";
    report.output.push_back(report.verdict);
    return yes ? kExitYes : kExitNo;
}

int cmd_necessary(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    PartialElection pe = to_partial_election(f);
    int p = resolve_target(f, opt.target);
    PartialAgenda pa = f.pagenda ? *f.pagenda
                                 : (f.agenda ? to_partial_agenda(*f.agenda)
                                             : PartialAgenda(pe.candidate_count()));
    bool yes = necessary_winner(pe, pa, p);
    report.verdict = yes ? "necessary" : "not necessary";
    report.output.push_back(report.verdict);
    return yes ? kExitYes : kExitNo;
}

int cmd_reduce(const Options& opt, RunReport& report) {
    auto id = reduction_from_name(opt.theorem);
    if (!id) throw parse_error("unknown theorem '" + opt.theorem + "'");
    RbdsInstance g = load_rbds_file(opt.file);
    if (opt.normalize) g = normalize_rbds(g);
    ReductionOutput out = reduce(g, *id);
    std::string text = serialize_election_file(reduction_to_file(out));
    if (opt.out_file.empty()) {
        std::cout << text;
    } else {
        write_text_file(opt.out_file, text);
        report.output.push_back("wrote " + opt.out_file);
    }
    report.verdict = "ok";
    if (out.is_partial) {
        report.stats["m"] = out.partial_election.candidate_count();
        report.stats["n"] = out.partial_election.vote_count();
    } else {
        report.stats["m"] = out.control.roster_size();
        long long n = 0;
        for (const auto& v : out.control.registered_votes) n += v.multiplicity;
        report.stats["n"] = n;
    }
    return kExitYes;
}

int cmd_verify_reduction(const Options& opt, RunReport& report) {
    auto id = reduction_from_name(opt.theorem);
    if (!id) throw parse_error("unknown theorem '" + opt.theorem + "'");
    VerifyReport r = verify_reduction(*id, opt.max_red, opt.max_blue, worker_threads());
    report.stats["enumerated"] = r.enumerated;
    report.stats["filtered"] = r.filtered;
    report.stats["checked"] = r.checked;
    report.stats["yes_instances"] = r.yes_instances;
    report.stats["mismatches"] = r.mismatches;
    report.stats["complete"] = r.complete;
    std::ostringstream line;
    line << "checked " << r.checked << " instances (" << r.filtered << " filtered, "
         << r.yes_instances << " yes): " << r.mismatches << " mismatches";
    report.output.push_back(line.str());
    if (!r.first_counterexample.empty())
        report.output.push_back("counterexample: " + r.first_counterexample);
    if (!r.complete) {
        report.verdict = "incomplete";
        return kExitCap;
    }
    report.verdict = r.mismatches == 0 ? "equivalent" : "mismatch";
    return r.mismatches == 0 ? kExitYes : kExitNo;
}

int cmd_lint(const Options& opt, RunReport& report) {
    ElectionFile f = load_election_file(opt.file);
    stat_file(report, f);
    Election e;
    e.labels = f.roster();
    e.votes = f.votes;
    auto ties = tied_pairs(e);
    for (auto [a, b] : ties)
        report.output.push_back("tie: " + f.label(a) + " " + f.label(b));
    if (ties.empty()) report.output.push_back("no ties");
    report.verdict = ties.empty() ? "no ties" : std::to_string(ties.size()) + " tied pairs";
    report.stats["tied_pairs"] = ties.size();
    return kExitYes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequential parliamentary voting toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured output");

    Options opt;

    auto* winner_cmd = app.add_subcommand("winner", "winner under a sequential rule");
    winner_cmd->add_option("--rule", opt.rule, "tsmr|successive|amendment");
    winner_cmd->add_flag("--all-agendas", opt.all_agendas, "winner per agenda, all m! agendas");
    winner_cmd->add_option("--cap", opt.cap, "override the m <= 8 enumeration cap");
    winner_cmd->add_option("file", opt.file, "election file")->required();

    auto* ac_cmd = app.add_subcommand("agenda-control", "find an agenda making the target win");
    ac_cmd->add_option("--target", opt.target, "distinguished candidate label");
    ac_cmd->add_option("file", opt.file, "election file")->required();

    auto* man_cmd = app.add_subcommand("manipulate", "coordinate k extra ballots for the target");
    man_cmd->add_option("--target", opt.target, "distinguished candidate label");
    man_cmd->add_option("-k", opt.k, "number of manipulators")->required();
    man_cmd->add_option("file", opt.file, "election file")->required();

    auto* ctl_cmd = app.add_subcommand("control", "election control");
    ctl_cmd->add_option("--variant", opt.variant, "ccav|ccdv|ccac|ccdc|dcav|dcdv|dcac|dcdc")
        ->required();
    ctl_cmd->add_flag("--exact", opt.exact, "force the exhaustive solver");
    ctl_cmd->add_option("--target", opt.target, "distinguished candidate label");
    ctl_cmd->add_option("-k", opt.k, "budget for the variant's action");
    ctl_cmd->add_option("--cap", opt.cap, "override the exact solver subset-space cap");
    ctl_cmd->add_option("file", opt.file, "control instance file")->required();

    auto* pos_cmd = app.add_subcommand("possible", "possible winner under partial information");
    pos_cmd->add_option("--target", opt.target, "distinguished candidate label");
    pos_cmd->add_option("--budget", opt.budget, "completion enumeration budget");
    pos_cmd->add_option("file", opt.file, "partial election file")->required();

    auto* nec_cmd = app.add_subcommand("necessary", "necessary winner under partial information");
    nec_cmd->add_option("--target", opt.target, "distinguished candidate label");
    nec_cmd->add_option("file", opt.file, "partial election file")->required();

    auto* red_cmd = app.add_subcommand("reduce", "compile a domination instance into an election");
    red_cmd->add_option("--theorem", opt.theorem, "construction name, e.g. ccav-first")->required();
    red_cmd->add_flag("--normalize", opt.normalize, "pad red degrees to regular first");
    red_cmd->add_option("-o", opt.out_file, "output file (stdout when absent)");
    red_cmd->add_option("file", opt.file, "rbds file")->required();

    auto* ver_cmd = app.add_subcommand("verify-reduction", "exhaustive equivalence sweep");
    ver_cmd->add_option("--theorem", opt.theorem, "construction name")->required();
    ver_cmd->add_option("--max-red", opt.max_red, "max red vertices");
    ver_cmd->add_option("--max-blue", opt.max_blue, "max blue vertices");

    auto* lint_cmd = app.add_subcommand("lint", "report tied pairs");
    lint_cmd->add_option("file", opt.file, "election file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (opt.cap > 0)
        std::cerr << "warning: cap override in effect (--cap " << opt.cap << ")\n";

    RunReport report;
    report.command = join_command(argc, argv);
    auto t0 = std::chrono::steady_clock::now();
    int code = kExitUsage;
    try {
        if (*winner_cmd) code = cmd_winner(opt, report);
        else if (*ac_cmd) code = cmd_agenda_control(opt, report);
        else if (*man_cmd) code = cmd_manipulate(opt, report);
        else if (*ctl_cmd) code = cmd_control(opt, report);
        else if (*pos_cmd) code = cmd_possible(opt, report);
        else if (*nec_cmd) code = cmd_necessary(opt, report);
        else if (*red_cmd) code = cmd_reduce(opt, report);
        else if (*ver_cmd) code = cmd_verify_reduction(opt, report);
        else if (*lint_cmd) code = cmd_lint(opt, report);
    } catch (const cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    report.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    print_report(report, as_json);
    return code;
}
