#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "test_util.hpp"
#include "tsmr/errors.hpp"
#include "tsmr/io.hpp"
#include "tsmr/partial.hpp"

using namespace tsmr;
using namespace tsmr::testing;

namespace {
const std::string kFixtures = TSMR_FIXTURE_DIR;
}

TEST_CASE("parse the example fixture") {
    ElectionFile f = load_election_file(kFixtures + "/example1.elec");
    CHECK(f.candidates == std::vector<std::string>{"a", "b", "c", "d"});
    REQUIRE(f.agenda.has_value());
    CHECK(f.agenda->order == std::vector<int>{0, 1, 2, 3});
    CHECK(f.distinguished == 0);
    REQUIRE(f.votes.size() == 3);
    CHECK(f.votes[0].ranking == std::vector<int>{1, 3, 2, 0});
    CHECK(f.votes[0].multiplicity == 1);
    Election e = to_election(f);
    CHECK(e == example1());
}

TEST_CASE("parse control fixture") {
    ElectionFile f = load_election_file(kFixtures + "/control-ccav.elec");
    CHECK(f.mode == ControlMode::constructive);
    REQUIRE(f.budgets.has_value());
    CHECK(f.budgets->av == 2);
    CHECK(f.uvotes.size() == 1);
    CHECK(f.uvotes[0].multiplicity == 3);
    ControlInstance inst = to_control_instance(f);
    CHECK(inst.k_av == 2);
    CHECK(variant_pattern_violation(inst, Variant::ccav).empty());
}

TEST_CASE("parse partial fixture") {
    ElectionFile f = load_election_file(kFixtures + "/partial.elec");
    REQUIRE(f.pagenda.has_value());
    CHECK(f.pagenda->has(0, 1));
    CHECK(f.pagenda->has(0, 2));
    CHECK(!f.pagenda->has(1, 2));
    CHECK(f.pvotes.size() == 2);
    PartialElection pe = to_partial_election(f);
    CHECK(pe.votes.size() == 3); // complete vote became a maximal pvote
    CHECK(pe.vote_count() == 3);
}

TEST_CASE("parse rbds fixture") {
    RbdsInstance g = load_rbds_file(kFixtures + "/rbds-star.rbds");
    CHECK(g.red_labels == std::vector<std::string>{"r1", "r2", "r3"});
    CHECK(g.blue_labels == std::vector<std::string>{"b1", "b2"});
    CHECK(g.blue_adj[0] == std::vector<int>{0});
    CHECK(g.blue_adj[1] == std::vector<int>{1, 2});
    CHECK(g.kappa == 1);
    CHECK(!rbds_brute(g).has_value());
}

TEST_CASE("serialize-parse fixed point on every parsing fixture") {
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
        std::string path = entry.path().string();
        std::string ext = entry.path().extension().string();
        INFO(path);
        if (ext == ".elec") {
            std::string text = read_text_file(path);
            ElectionFile f = parse_election_text(text, path);
            std::string s1 = serialize_election_file(f);
            ElectionFile f2 = parse_election_text(s1, path);
            std::string s2 = serialize_election_file(f2);
            CHECK(s1 == s2);
            CHECK(s1 == normalize_text(text));
        } else if (ext == ".rbds") {
            std::string text = read_text_file(path);
            RbdsInstance g = parse_rbds_text(text, path);
            std::string s1 = serialize_rbds_file(g);
            RbdsInstance g2 = parse_rbds_text(s1, path);
            std::string s2 = serialize_rbds_file(g2);
            CHECK(s1 == s2);
            CHECK(s1 == normalize_text(text));
        }
    }
}

TEST_CASE("parser diagnostics name the file and line") {
    auto parse = [](const std::string& text) {
        return parse_election_text(text, "t.elec");
    };
    CHECK_THROWS_WITH_AS(parse("vote 1: a > b\n"), doctest::Contains("missing 'candidates:'"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a a\n"), doctest::Contains("duplicate candidate"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\nvote 1: a > c\n"),
                         doctest::Contains("t.elec:2"), parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\nvote 1: a\n"),
                         doctest::Contains("rank all 2"), parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\nvote 0: a > b\n"),
                         doctest::Contains("multiplicity"), parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\npvote 1: a > b, b > a\n"),
                         doctest::Contains("cycle"), parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\nagenda: a b\npagenda: a > b\n"),
                         doctest::Contains("mutually exclusive"), parse_error);
    CHECK_THROWS_WITH_AS(parse("candidates: a b\nnonsense: x\n"),
                         doctest::Contains("unknown statement"), parse_error);
    CHECK_THROWS_AS(parse_rbds_text("red: r1\nblue: b1\nedge: b1 r9\nkappa: 1\n", "g.rbds"),
                    parse_error);
    CHECK_THROWS_AS(parse_rbds_text("red: r1\nblue: b1\nkappa: 2\n", "g.rbds"), parse_error);
}

TEST_CASE("reduction output files round-trip through the parser") {
    RbdsInstance g = load_rbds_file(kFixtures + "/rbds-star.rbds");
    for (ReductionId id : all_reductions()) {
        if (!reduction_precondition_violation(g, id).empty()) continue;
        ReductionOutput out = reduce(g, id);
        ElectionFile f = reduction_to_file(out);
        std::string s1 = serialize_election_file(f);
        ElectionFile f2 = parse_election_text(s1, "out.elec");
        CHECK(serialize_election_file(f2) == s1);
        if (!out.is_partial) {
            ControlInstance inst = to_control_instance(f2);
            CHECK(solve_exact(inst).has_value() == solve_exact(out.control).has_value());
        } else {
            PartialElection pe = to_partial_election(f2);
            REQUIRE(f2.agenda.has_value());
            bool reparsed = possible_winner_exact(pe, to_partial_agenda(*f2.agenda),
                                                  *f2.distinguished, {1000000});
            bool direct = possible_winner_exact(out.partial_election,
                                                to_partial_agenda(out.partial_agenda),
                                                out.distinguished, {1000000});
            CHECK(reparsed == direct);
        }
    }
}

TEST_CASE("normalize_text strips comments and squeezes whitespace") {
    std::string raw = "  candidates:   a  b \t c   # trailing\n\n# full line\nvote 1: a > b > c\n";
    CHECK(normalize_text(raw) == "candidates: a b c\nvote 1: a > b > c\n");
}
