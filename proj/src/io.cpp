#include "tsmr/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tsmr/errors.hpp"

namespace tsmr {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

void check_label(const std::string& label, const std::string& where) {
    if (label.empty()) throw parse_error(where + ": empty label");
    if (label.find_first_of(">,:#=") != std::string::npos)
        throw parse_error(where + ": label '" + label + "' contains a reserved character");
}

struct Line {
    int number;
    std::string key;   // statement keyword
    int multiplicity;  // -1 when absent
    std::string value; // text after the colon
};

} // namespace

std::vector<std::string> ElectionFile::roster() const {
    std::vector<std::string> out = candidates;
    out.insert(out.end(), unregistered_candidates.begin(), unregistered_candidates.end());
    return out;
}

const std::string& ElectionFile::label(int id) const {
    if (id < static_cast<int>(candidates.size())) return candidates[id];
    return unregistered_candidates[id - candidates.size()];
}

std::optional<int> ElectionFile::id_of(const std::string& lbl) const {
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
        if (candidates[i] == lbl) return i;
    for (int i = 0; i < static_cast<int>(unregistered_candidates.size()); ++i)
        if (unregistered_candidates[i] == lbl) return static_cast<int>(candidates.size()) + i;
    return std::nullopt;
}

std::string normalize_text(const std::string& text) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string raw;
    while (std::getline(is, raw)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        std::string collapsed;
        bool in_space = false;
        for (char c : line) {
            if (c == ' ' || c == '\t') {
                in_space = true;
                continue;
            }
            if (in_space && !collapsed.empty()) collapsed += ' ';
            in_space = false;
            collapsed += c;
        }
        os << collapsed << "\n";
    }
    return os.str();
}

namespace {

std::vector<Line> scan_lines(const std::string& text, const std::string& filename) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string raw;
    int number = 0;
    while (std::getline(is, raw)) {
        ++number;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error(filename + ":" + std::to_string(number) + ": expected 'key: value'");
        std::vector<std::string> head = split_ws(line.substr(0, colon));
        if (head.empty() || head.size() > 2)
            throw parse_error(filename + ":" + std::to_string(number) + ": malformed statement");
        Line l;
        l.number = number;
        l.key = head[0];
        l.multiplicity = -1;
        if (head.size() == 2) {
            try {
                size_t used = 0;
                l.multiplicity = std::stoi(head[1], &used);
                if (used != head[1].size()) throw std::invalid_argument("");
            } catch (...) {
                throw parse_error(filename + ":" + std::to_string(number) +
                                  ": bad multiplicity '" + head[1] + "'");
            }
            if (l.multiplicity < 1)
                throw parse_error(filename + ":" + std::to_string(number) +
                                  ": multiplicity must be >= 1");
        }
        l.value = trim(line.substr(colon + 1));
        out.push_back(std::move(l));
    }
    return out;
}

} // namespace

ElectionFile parse_election_text(const std::string& text, const std::string& filename) {
    std::vector<Line> lines = scan_lines(text, filename);
    ElectionFile f;

    auto fail = [&](const Line& l, const std::string& msg) -> void {
        throw parse_error(filename + ":" + std::to_string(l.number) + ": " + msg);
    };

    // Candidate-declaring statements first so later lines may appear in any order.
    bool have_candidates = false, have_unregistered = false;
    for (const Line& l : lines) {
        if (l.key == "candidates") {
            if (have_candidates) fail(l, "duplicate candidates line");
            have_candidates = true;
            f.candidates = split_ws(l.value);
        } else if (l.key == "unregistered_candidates") {
            if (have_unregistered) fail(l, "duplicate unregistered_candidates line");
            have_unregistered = true;
            f.unregistered_candidates = split_ws(l.value);
        }
    }
    if (!have_candidates)
        throw parse_error(filename + ": missing 'candidates:' line");
    if (f.candidates.empty()) throw parse_error(filename + ": empty candidate roster");
    {
        std::map<std::string, int> seen;
        int id = 0;
        for (const auto& lbl : f.candidates) {
            check_label(lbl, filename);
            if (!seen.emplace(lbl, id++).second)
                throw parse_error(filename + ": duplicate candidate label '" + lbl + "'");
        }
        for (const auto& lbl : f.unregistered_candidates) {
            check_label(lbl, filename);
            if (!seen.emplace(lbl, id++).second)
                throw parse_error(filename + ": duplicate candidate label '" + lbl + "'");
        }
    }
    const int m = f.roster_size();

    auto resolve = [&](const Line& l, const std::string& lbl) -> int {
        auto id = f.id_of(lbl);
        if (!id) fail(l, "unknown candidate '" + lbl + "'");
        return *id;
    };

    auto parse_ranking = [&](const Line& l) -> std::vector<int> {
        std::vector<int> ranking;
        std::vector<char> seen(m, 0);
        for (const auto& part : split_on(l.value, '>')) {
            if (part.empty()) fail(l, "empty ranking entry");
            int c = resolve(l, part);
            if (seen[c]) fail(l, "candidate '" + part + "' ranked twice");
            seen[c] = 1;
            ranking.push_back(c);
        }
        if (static_cast<int>(ranking.size()) != m)
            fail(l, "vote must rank all " + std::to_string(m) + " candidates");
        return ranking;
    };

    auto parse_constraints = [&](const Line& l) -> PartialOrder {
        PartialOrder po(m);
        if (!l.value.empty()) {
            for (const auto& chain_text : split_on(l.value, ',')) {
                std::vector<std::string> items = split_on(chain_text, '>');
                if (items.size() < 2) fail(l, "constraint chain needs at least two candidates");
                for (size_t i = 0; i + 1 < items.size(); ++i) {
                    int a = resolve(l, items[i]);
                    int b = resolve(l, items[i + 1]);
                    if (a == b) fail(l, "self-constraint on '" + items[i] + "'");
                    po.set(a, b);
                }
            }
        }
        try {
            return close_transitive(po);
        } catch (const parse_error&) {
            fail(l, "constraints contain a cycle");
        }
        return po; // unreachable
    };

    for (const Line& l : lines) {
        if (l.key == "candidates" || l.key == "unregistered_candidates") continue;
        if (l.key == "vote" || l.key == "uvote") {
            Vote v;
            v.multiplicity = l.multiplicity < 0 ? 1 : l.multiplicity;
            v.ranking = parse_ranking(l);
            (l.key == "vote" ? f.votes : f.uvotes).push_back(std::move(v));
        } else if (l.key == "pvote") {
            PartialVote pv;
            pv.multiplicity = l.multiplicity < 0 ? 1 : l.multiplicity;
            pv.order = parse_constraints(l);
            f.pvotes.push_back(std::move(pv));
        } else if (l.key == "agenda") {
            if (f.agenda) fail(l, "duplicate agenda line");
            if (f.pagenda) fail(l, "agenda and pagenda are mutually exclusive");
            Agenda a;
            std::vector<char> seen(m, 0);
            for (const auto& lbl : split_ws(l.value)) {
                int c = resolve(l, lbl);
                if (seen[c]) fail(l, "candidate '" + lbl + "' listed twice in agenda");
                seen[c] = 1;
                a.order.push_back(c);
            }
            if (a.size() != m) fail(l, "agenda must order all candidates");
            f.agenda = std::move(a);
        } else if (l.key == "pagenda") {
            if (f.pagenda) fail(l, "duplicate pagenda line");
            if (f.agenda) fail(l, "agenda and pagenda are mutually exclusive");
            f.pagenda = parse_constraints(l);
        } else if (l.key == "distinguished") {
            if (f.distinguished) fail(l, "duplicate distinguished line");
            f.distinguished = resolve(l, l.value);
        } else if (l.key == "budgets") {
            if (f.budgets) fail(l, "duplicate budgets line");
            Budgets b;
            for (const auto& tok : split_ws(l.value)) {
                size_t eq = tok.find('=');
                if (eq == std::string::npos) fail(l, "budget entry must look like av=2");
                std::string name = tok.substr(0, eq);
                int val = 0;
                try {
                    val = std::stoi(tok.substr(eq + 1));
                } catch (...) {
                    fail(l, "bad budget value in '" + tok + "'");
                }
                if (val < 0) fail(l, "budgets must be non-negative");
                if (name == "av") b.av = val;
                else if (name == "dv") b.dv = val;
                else if (name == "ac") b.ac = val;
                else if (name == "dc") b.dc = val;
                else fail(l, "unknown budget '" + name + "'");
            }
            f.budgets = b;
        } else if (l.key == "mode") {
            if (f.mode) fail(l, "duplicate mode line");
            if (l.value == "constructive") f.mode = ControlMode::constructive;
            else if (l.value == "destructive") f.mode = ControlMode::destructive;
            else fail(l, "mode must be constructive or destructive");
        } else {
            fail(l, "unknown statement '" + l.key + "'");
        }
    }
    return f;
}

std::string serialize_election_file(const ElectionFile& f) {
    std::ostringstream os;
    auto join = [](const std::vector<std::string>& v) {
        std::string out;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out += ' ';
            out += v[i];
        }
        return out;
    };
    os << "candidates: " << join(f.candidates) << "\n";
    if (!f.unregistered_candidates.empty())
        os << "unregistered_candidates: " << join(f.unregistered_candidates) << "\n";
    if (f.agenda) {
        os << "agenda:";
        for (int c : f.agenda->order) os << " " << f.label(c);
        os << "\n";
    }
    if (f.pagenda) {
        os << "pagenda:";
        auto pairs = f.pagenda->reduced_pairs();
        for (size_t i = 0; i < pairs.size(); ++i)
            os << (i ? ", " : " ") << f.label(pairs[i].first) << " > " << f.label(pairs[i].second);
        os << "\n";
    }
    if (f.distinguished) os << "distinguished: " << f.label(*f.distinguished) << "\n";
    if (f.mode)
        os << "mode: " << (*f.mode == ControlMode::constructive ? "constructive" : "destructive")
           << "\n";
    if (f.budgets)
        os << "budgets: av=" << f.budgets->av << " dv=" << f.budgets->dv << " ac=" << f.budgets->ac
           << " dc=" << f.budgets->dc << "\n";
    auto emit_vote = [&](const char* key, const Vote& v) {
        os << key << " " << v.multiplicity << ":";
        for (size_t i = 0; i < v.ranking.size(); ++i)
            os << (i ? " > " : " ") << f.label(v.ranking[i]);
        os << "\n";
    };
    for (const auto& v : f.votes) emit_vote("vote", v);
    for (const auto& v : f.uvotes) emit_vote("uvote", v);
    for (const auto& pv : f.pvotes) {
        os << "pvote " << pv.multiplicity << ":";
        auto pairs = pv.order.reduced_pairs();
        for (size_t i = 0; i < pairs.size(); ++i)
            os << (i ? ", " : " ") << f.label(pairs[i].first) << " > " << f.label(pairs[i].second);
        os << "\n";
    }
    return os.str();
}

RbdsInstance parse_rbds_text(const std::string& text, const std::string& filename) {
    std::vector<Line> lines = scan_lines(text, filename);
    RbdsInstance g;
    bool have_red = false, have_blue = false, have_kappa = false;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::string, int> red_ids, blue_ids;

    auto fail = [&](const Line& l, const std::string& msg) -> void {
        throw parse_error(filename + ":" + std::to_string(l.number) + ": " + msg);
    };

    for (const Line& l : lines) {
        if (l.multiplicity >= 0) fail(l, "unexpected multiplicity");
        if (l.key == "red") {
            if (have_red) fail(l, "duplicate red line");
            have_red = true;
            g.red_labels = split_ws(l.value);
        } else if (l.key == "blue") {
            if (have_blue) fail(l, "duplicate blue line");
            have_blue = true;
            g.blue_labels = split_ws(l.value);
        } else if (l.key == "edge") {
            auto toks = split_ws(l.value);
            if (toks.size() != 2) fail(l, "edge needs 'blue red'");
            edges.emplace_back(toks[0], toks[1]);
        } else if (l.key == "kappa") {
            if (have_kappa) fail(l, "duplicate kappa line");
            have_kappa = true;
            try {
                g.kappa = std::stoi(l.value);
            } catch (...) {
                fail(l, "bad kappa value");
            }
        } else {
            fail(l, "unknown statement '" + l.key + "'");
        }
    }
    if (!have_blue) throw parse_error(filename + ": missing 'blue:' line");
    if (!have_kappa) throw parse_error(filename + ": missing 'kappa:' line");
    for (int i = 0; i < g.red_count(); ++i) {
        check_label(g.red_labels[i], filename);
        if (!red_ids.emplace(g.red_labels[i], i).second)
            throw parse_error(filename + ": duplicate red label '" + g.red_labels[i] + "'");
    }
    for (int i = 0; i < g.blue_count(); ++i) {
        check_label(g.blue_labels[i], filename);
        if (red_ids.count(g.blue_labels[i]) ||
            !blue_ids.emplace(g.blue_labels[i], i).second)
            throw parse_error(filename + ": duplicate vertex label '" + g.blue_labels[i] + "'");
    }
    g.blue_adj.assign(g.blue_count(), {});
    for (const auto& [bl, rl] : edges) {
        auto bit = blue_ids.find(bl);
        auto rit = red_ids.find(rl);
        if (bit == blue_ids.end())
            throw parse_error(filename + ": edge references unknown blue vertex '" + bl + "'");
        if (rit == red_ids.end())
            throw parse_error(filename + ": edge references unknown red vertex '" + rl + "'");
        g.blue_adj[bit->second].push_back(rit->second);
    }
    for (auto& adj : g.blue_adj) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    validate_rbds(g);
    return g;
}

std::string serialize_rbds_file(const RbdsInstance& g) {
    std::ostringstream os;
    os << "red:";
    for (const auto& l : g.red_labels) os << " " << l;
    os << "\n";
    os << "blue:";
    for (const auto& l : g.blue_labels) os << " " << l;
    os << "\n";
    for (int b = 0; b < g.blue_count(); ++b)
        for (int r : g.blue_adj[b]) os << "edge: " << g.blue_labels[b] << " " << g.red_labels[r] << "\n";
    os << "kappa: " << g.kappa << "\n";
    return os.str();
}

Election to_election(const ElectionFile& f) {
    if (!f.pvotes.empty()) throw parse_error("partial votes present; not a plain election");
    if (!f.unregistered_candidates.empty() || !f.uvotes.empty())
        throw parse_error("control sections present; not a plain election");
    Election e;
    e.labels = f.candidates;
    e.votes = f.votes;
    return e;
}

PartialElection to_partial_election(const ElectionFile& f) {
    if (!f.unregistered_candidates.empty() || !f.uvotes.empty())
        throw parse_error("control sections present; not a partial election");
    PartialElection pe;
    pe.labels = f.candidates;
    const int m = pe.candidate_count();
    for (const auto& v : f.votes) pe.votes.push_back({chain_order(m, v.ranking), v.multiplicity});
    for (const auto& pv : f.pvotes) pe.votes.push_back(pv);
    return pe;
}

ControlInstance to_control_instance(const ElectionFile& f) {
    if (!f.pvotes.empty()) throw parse_error("partial votes present; not a control instance");
    ControlInstance inst;
    inst.labels = f.roster();
    inst.unregistered.assign(inst.labels.size(), 0);
    for (size_t i = f.candidates.size(); i < inst.labels.size(); ++i) inst.unregistered[i] = 1;
    inst.registered_votes = f.votes;
    inst.unregistered_votes = f.uvotes;
    if (!f.agenda) throw parse_error("agenda required");
    inst.agenda = *f.agenda;
    if (!f.distinguished) throw parse_error("distinguished candidate required");
    inst.distinguished = *f.distinguished;
    if (f.budgets) {
        inst.k_av = f.budgets->av;
        inst.k_dv = f.budgets->dv;
        inst.k_ac = f.budgets->ac;
        inst.k_dc = f.budgets->dc;
    }
    inst.mode = f.mode.value_or(ControlMode::constructive);
    return inst;
}

ElectionFile control_to_file(const ControlInstance& inst) {
    ElectionFile f;
    // Registered candidates first; remap ids when D is interleaved.
    std::vector<int> order;
    for (int c = 0; c < inst.roster_size(); ++c)
        if (!inst.unregistered[c]) order.push_back(c);
    size_t registered = order.size();
    for (int c = 0; c < inst.roster_size(); ++c)
        if (inst.unregistered[c]) order.push_back(c);
    std::vector<int> to_new(inst.roster_size());
    for (int i = 0; i < inst.roster_size(); ++i) to_new[order[i]] = i;

    for (size_t i = 0; i < order.size(); ++i) {
        if (i < registered) f.candidates.push_back(inst.labels[order[i]]);
        else f.unregistered_candidates.push_back(inst.labels[order[i]]);
    }
    auto remap_vote = [&](const Vote& v) {
        Vote nv;
        nv.multiplicity = v.multiplicity;
        for (int c : v.ranking) nv.ranking.push_back(to_new[c]);
        return nv;
    };
    for (const auto& v : inst.registered_votes) f.votes.push_back(remap_vote(v));
    for (const auto& v : inst.unregistered_votes) f.uvotes.push_back(remap_vote(v));
    Agenda a;
    for (int c : inst.agenda.order) a.order.push_back(to_new[c]);
    f.agenda = a;
    f.distinguished = to_new[inst.distinguished];
    f.budgets = Budgets{inst.k_av, inst.k_dv, inst.k_ac, inst.k_dc};
    f.mode = inst.mode;
    return f;
}

ElectionFile partial_to_file(const PartialElection& pe, const Agenda& agenda, int distinguished) {
    ElectionFile f;
    f.candidates = pe.labels;
    f.agenda = agenda;
    f.distinguished = distinguished;
    f.pvotes = pe.votes;
    return f;
}

ElectionFile reduction_to_file(const ReductionOutput& out) {
    if (out.is_partial) return partial_to_file(out.partial_election, out.partial_agenda, out.distinguished);
    return control_to_file(out.control);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write file: " + path);
    out << content;
}

ElectionFile load_election_file(const std::string& path) {
    return parse_election_text(read_text_file(path), path);
}

RbdsInstance load_rbds_file(const std::string& path) {
    return parse_rbds_text(read_text_file(path), path);
}

} // namespace tsmr
