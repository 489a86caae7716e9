#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "bioevent/standoff.hpp"
#include "test_util.hpp"

using namespace bioevent;

namespace {

std::string listing(const std::string& name) {
    return testutil::read_file(
        testutil::data_path("tests/data/reference_listings/" + name));
}

// Whitespace-run-normalized, order-insensitive line comparison.
std::vector<std::string> normalized_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ws(line);
        std::string tok, norm;
        while (ws >> tok) {
            if (!norm.empty()) norm += ' ';
            norm += tok;
        }
        if (!norm.empty()) lines.push_back(norm);
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

}  // namespace

TEST_CASE("textbound without surface parses") {
    auto set = parse_standoff("T1036 Binding 48 58\n");
    REQUIRE(set.textbounds.count("T1036"));
    const auto& tb = set.textbounds.at("T1036");
    CHECK(tb.kind == "Binding");
    CHECK(tb.start == 48);
    CHECK(tb.end == 58);
    CHECK_FALSE(tb.surface.has_value());
}

TEST_CASE("surface text keeps internal spaces intact") {
    auto set = parse_standoff(
        "T3 Protein 589 656 AMP-activated protein kinase enhanced BPG mutase "
        "activation\n");
    REQUIRE(set.textbounds.at("T3").surface ==
            "AMP-activated protein kinase enhanced BPG mutase activation");
}

TEST_CASE("empty input parses to an empty set") {
    auto set = parse_standoff("");
    CHECK(set.textbounds.empty());
    CHECK(set.events.empty());
}

TEST_CASE("event line with multi-word type and roles") {
    auto set = parse_standoff(
        "T3 Protein 1 5 ABCD\n"
        "T1039 Positive regulation 574 584\n"
        "E119 Positive regulation: T1039 Cause: T3 Theme: T3\n");
    REQUIRE(set.events.count("E119"));
    const auto& ev = set.events.at("E119");
    CHECK(ev.event_type == "Positive_regulation");
    CHECK(ev.trigger == "T1039");
    REQUIRE(ev.args.size() == 2);
    CHECK(ev.args[0].role == "Cause");
    CHECK(ev.args[0].target == "T3");
    CHECK(ev.args[1].role == "Theme");
    CHECK(ev.args[1].target == "T3");
}

TEST_CASE("reference listings parse with the printed event counts and roles") {
    auto ex1 = parse_standoff(listing("example1.ann"));
    REQUIRE(ex1.events.size() == 4);
    CHECK(ex1.events.at("E116").event_type == "Phosphorylation");
    CHECK(ex1.events.at("E116").args ==
          std::vector<EventArg>{{"Theme", "T0"}});
    CHECK(ex1.events.at("E117").args ==
          std::vector<EventArg>{{"Theme", "T1"}});
    CHECK(ex1.events.at("E118").args ==
          std::vector<EventArg>{{"Theme", "T2"}});
    CHECK(ex1.events.at("E119").event_type == "Positive_regulation");
    CHECK(ex1.events.at("E119").args ==
          std::vector<EventArg>{{"Cause", "T3"}, {"Theme", "T3"}});

    auto ex2 = parse_standoff(listing("example2.ann"));
    REQUIRE(ex2.events.size() == 2);
    CHECK(ex2.events.at("E113").args ==
          std::vector<EventArg>{{"Theme", "T0"}, {"Theme2", "T1"}});
    CHECK(ex2.events.at("E114").args ==
          std::vector<EventArg>{{"Theme", "T1"}, {"Theme2", "T0"}});

    auto ex3 = parse_standoff(listing("example3.ann"));
    REQUIRE(ex3.events.size() == 2);
    CHECK(ex3.events.at("E4").args == std::vector<EventArg>{{"Theme", "T2"}});
    CHECK(ex3.events.at("E5").args == std::vector<EventArg>{{"Theme", "T3"}});
}

TEST_CASE("serialize after parse reproduces the listings modulo whitespace") {
    for (const char* name : {"example1.ann", "example2.ann", "example3.ann"}) {
        auto original = listing(name);
        auto round = serialize_standoff(parse_standoff(original));
        CHECK(normalized_lines(round) == normalized_lines(original));
    }
}

TEST_CASE("serializing an empty set yields empty text") {
    CHECK(serialize_standoff(AnnotationSet{}).empty());
}

TEST_CASE("unparseable line reports its line number") {
    try {
        parse_standoff("T1 Protein 0 4 okay\nNOT AN ANNOTATION\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("duplicate ids are rejected") {
    CHECK_THROWS_AS(parse_standoff("T1 Protein 0 4 aaaa\nT1 Protein 5 9 bbbb\n"),
                    ParseError);
}

TEST_CASE("serialize rejects dangling references") {
    AnnotationSet set;
    set.textbounds["T1"] = {"T1", "Binding", 0, 4, std::nullopt};
    set.events["E1"] = {"E1", "Binding", "T1", {{"Theme", "T9"}}};
    CHECK_THROWS(serialize_standoff(set));
}

TEST_CASE("round trip holds over generated annotation sets") {
    testutil::Rng rng(123);
    for (int round = 0; round < 100; ++round) {
        AnnotationSet set;
        std::size_t ntb = 1 + rng.below(8);
        std::vector<std::string> protein_ids, trigger_ids;
        for (std::size_t i = 0; i < ntb; ++i) {
            TextBound tb;
            tb.id = "T" + std::to_string(i);
            bool protein = rng.below(2) == 0 || i == 0;
            tb.kind = protein
                          ? "Protein"
                          : EventTypes::builtin()[rng.below(
                                EventTypes::builtin().size())];
            tb.start = rng.below(500);
            tb.end = tb.start + 1 + rng.below(40);
            if (rng.below(2) == 0)
                tb.surface = "surface text " + std::to_string(i);
            (protein ? protein_ids : trigger_ids).push_back(tb.id);
            set.textbounds[tb.id] = std::move(tb);
        }
        std::size_t nev = rng.below(5);
        for (std::size_t i = 0; i < nev && !trigger_ids.empty(); ++i) {
            BioEvent ev;
            ev.id = "E" + std::to_string(i);
            ev.trigger = trigger_ids[rng.below(trigger_ids.size())];
            ev.event_type = set.textbounds[ev.trigger].kind;
            ev.args.push_back(
                {"Theme", protein_ids[rng.below(protein_ids.size())]});
            if (rng.below(3) == 0)
                ev.args.push_back(
                    {"Cause", protein_ids[rng.below(protein_ids.size())]});
            set.events[ev.id] = std::move(ev);
        }
        auto round_tripped = parse_standoff(serialize_standoff(set));
        round_tripped.doc_pmid = set.doc_pmid;
        CHECK(round_tripped == set);
    }
}

TEST_CASE("validator flags dangling references") {
    AnnotationSet set;
    set.textbounds["T1"] = {"T1", "Binding", 0, 4, std::nullopt};
    set.events["E1"] = {"E1", "Binding", "T1", {{"Theme", "T9"}}};
    auto report = validate(set);
    CHECK_FALSE(report.ok(ValidationMode::Lenient));
}

TEST_CASE("span/surface width mismatch is a warning in lenient mode") {
    // Example 3 prints `T2 Protein 913 923 EPAS1`: width 10, surface 5.
    auto set = parse_standoff("T2 Protein 913 923 EPAS1\n");
    auto report = validate(set, std::nullopt, ValidationMode::Lenient);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].severity == ValidationFinding::Severity::Warning);
    CHECK(report.ok(ValidationMode::Lenient));
    CHECK_FALSE(validate(set, std::nullopt, ValidationMode::Strict)
                    .ok(ValidationMode::Strict));
}

TEST_CASE("consistent set with matching document text validates cleanly") {
    std::string doc = "EPAS1 binds hemoglobin";
    AnnotationSet set;
    set.textbounds["T1"] = {"T1", "Protein", 0, 5, "EPAS1"};
    set.textbounds["T2"] = {"T2", "Protein", 12, 22, "hemoglobin"};
    set.textbounds["T3"] = {"T3", "Binding", 6, 11, "binds"};
    set.events["E1"] = {"E1", "Binding", "T3",
                        {{"Theme", "T1"}, {"Theme2", "T2"}}};
    auto report = validate(set, doc, ValidationMode::Strict);
    CHECK(report.empty());
}

TEST_CASE("offset beyond document bounds is reported") {
    AnnotationSet set;
    set.textbounds["T1"] = {"T1", "Protein", 90, 95, std::nullopt};
    auto report = validate(set, std::string("short text"));
    CHECK_FALSE(report.empty());
}

TEST_CASE("validator rejects event reference cycles") {
    AnnotationSet set;
    set.textbounds["T1"] = {"T1", "Regulation", 0, 3, std::nullopt};
    set.textbounds["T2"] = {"T2", "Regulation", 4, 7, std::nullopt};
    set.events["E1"] = {"E1", "Regulation", "T1", {{"Theme", "E2"}}};
    set.events["E2"] = {"E2", "Regulation", "T2", {{"Theme", "E1"}}};
    auto report = validate(set);
    CHECK_FALSE(report.ok(ValidationMode::Lenient));
    bool cycle_found = false;
    for (const auto& f : report.findings)
        if (f.message.find("cycle") != std::string::npos) cycle_found = true;
    CHECK(cycle_found);
}

TEST_CASE("stream with #PMID separators splits into documents") {
    std::string stream =
        "#PMID 101\n"
        "T1 Protein 0 4 ABCD\n"
        "#PMID 102\n"
        "T1 Protein 2 6 EFGH\n";
    auto docs = parse_standoff_stream(stream);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].first == 101);
    CHECK(docs[0].second.doc_pmid == 101);
    CHECK(docs[1].second.textbounds.at("T1").surface == "EFGH");
    CHECK(serialize_standoff_stream(docs) == stream);
}
