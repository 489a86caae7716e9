#include <catch2/catch_amalgamated.hpp>

#include "bioevent/medline.hpp"
#include "test_util.hpp"

using namespace bioevent;

TEST_CASE("parse_medline extracts PMID, TI and AB") {
    std::string raw =
        "PMID- 27732943\n"
        "TI  - Angiotensin II Receptor 1 gene variants are associated with "
        "high-altitude pulmonary edema risk.\n"
        "AB  - Previous studies demonstrated that AGTR1 may play an important "
        "role.\n";
    auto result = parse_medline(raw);
    REQUIRE(result.records.size() == 1);
    const auto& rec = result.records[0];
    CHECK(rec.pmid == 27732943);
    CHECK(rec.title ==
          "Angiotensin II Receptor 1 gene variants are associated with "
          "high-altitude pulmonary edema risk.");
    CHECK(rec.abstract ==
          "Previous studies demonstrated that AGTR1 may play an important "
          "role.");
    CHECK(result.warnings.empty());
}

TEST_CASE("parse_medline on empty input yields no records") {
    auto result = parse_medline("");
    CHECK(result.records.empty());
}

TEST_CASE("continuation lines are joined with a single space") {
    std::string raw =
        "PMID- 12345\n"
        "TI  - A title\n"
        "AB  - First part of the abstract\n"
        "      second part on a folded line\n"
        "      third part.\n";
    auto result = parse_medline(raw);
    REQUIRE(result.records.size() == 1);
    // Frozen expected value: the unfolded abstract is the single-space join.
    CHECK(result.records[0].abstract ==
          "First part of the abstract second part on a folded line third "
          "part.");
}

TEST_CASE("folded fixture abstracts unfold to the known source text") {
    auto parsed =
        parse_medline(testutil::read_file(testutil::data_path(
            "tests/data/medline/examples.medline")));
    REQUIRE(parsed.records.size() == 3);
    CHECK(parsed.records[0].pmid == 27482003);
    // The fixture folds this abstract across continuation lines; the parse
    // must reproduce the flat source sentence.
    CHECK(parsed.records[0].abstract.starts_with(
        "Mechanistically, we demonstrated that erythrocyte AMP-activated "
        "protein kinase was activated in humans at high altitude"));
    CHECK(parsed.records[0].abstract.find('\n') == std::string::npos);
    CHECK(parsed.records[0].abstract.ends_with(
        "reduced tissue hypoxia and inflammation."));
}

TEST_CASE("block without PMID is skipped with a warning") {
    std::string raw =
        "TI  - Orphan title\n"
        "AB  - Orphan abstract\n"
        "\n"
        "PMID- 7\n"
        "TI  - Real\n";
    auto result = parse_medline(raw);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].pmid == 7);
    REQUIRE_FALSE(result.warnings.empty());
}

TEST_CASE("malformed tag lines are ignored with a warning") {
    std::string raw =
        "PMID- 9\n"
        "TI  - Good title\n"
        "THIS IS NOT A TAG LINE\n"
        "AB  - Fine.\n";
    auto result = parse_medline(raw);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].title == "Good title");
    CHECK(result.records[0].abstract == "Fine.");
    CHECK(result.warnings.size() == 1);
}

TEST_CASE("other MEDLINE tags are ignored") {
    std::string raw =
        "PMID- 11\n"
        "DP  - 2020\n"
        "TI  - Title here\n"
        "AU  - Somebody A\n"
        "AB  - Abstract here.\n"
        "MH  - Altitude Sickness\n";
    auto result = parse_medline(raw);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].title == "Title here");
    CHECK(result.records[0].abstract == "Abstract here.");
}

TEST_CASE("parse then serialize then parse is idempotent on (PMID, TI, AB)") {
    testutil::Rng rng(42);
    std::vector<std::string> words = {"hypoxia", "EPO",      "binding",
                                      "altitude", "response", "edema"};
    for (int round = 0; round < 50; ++round) {
        std::vector<MedlineRecord> records;
        std::size_t count = 1 + rng.below(5);
        for (std::size_t i = 0; i < count; ++i) {
            MedlineRecord rec;
            rec.pmid = static_cast<long long>(1 + rng.below(1000000));
            for (std::size_t w = 0; w < 2 + rng.below(6); ++w) {
                if (!rec.title.empty()) rec.title += ' ';
                rec.title += words[rng.below(words.size())];
            }
            for (std::size_t w = 0; w < rng.below(20); ++w) {
                if (!rec.abstract.empty()) rec.abstract += ' ';
                rec.abstract += words[rng.below(words.size())];
            }
            records.push_back(std::move(rec));
        }
        auto reparsed = parse_medline(serialize_medline(records));
        REQUIRE(reparsed.records.size() == records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            CHECK(reparsed.records[i].pmid == records[i].pmid);
            CHECK(reparsed.records[i].title == records[i].title);
            CHECK(reparsed.records[i].abstract == records[i].abstract);
        }
    }
}

namespace {

std::vector<MedlineRecord> make_records(const std::vector<long long>& pmids) {
    std::vector<MedlineRecord> out;
    for (long long p : pmids) {
        MedlineRecord rec;
        rec.pmid = p;
        rec.title = "title " + std::to_string(p);
        rec.abstract = "abstract " + std::to_string(p);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

TEST_CASE("dedup keeps the first occurrence of each PMID") {
    auto corpus = dedup({{"A", make_records({1, 2})}, {"B", make_records({2, 3})}});
    REQUIRE(corpus.records.size() == 3);
    CHECK(corpus.records[0].pmid == 1);
    CHECK(corpus.records[1].pmid == 2);
    CHECK(corpus.records[2].pmid == 3);
    CHECK(corpus.records[1].source_query == "A");
    CHECK(corpus.overall.duplicates == 1);
    CHECK(corpus.overall.total == 4);
    CHECK(corpus.overall.unique == 3);
}

TEST_CASE("batch sizes 5422/3904/1023 report total-in 10349") {
    std::vector<long long> a, b, c;
    for (long long i = 0; i < 5422; ++i) a.push_back(i);
    for (long long i = 0; i < 3904; ++i) b.push_back(4000 + i);
    for (long long i = 0; i < 1023; ++i) c.push_back(7000 + i);
    auto corpus = dedup({{"High Altitude Diseases", make_records(a)},
                         {"High Altitude Sickness", make_records(b)},
                         {"High Altitude Illness", make_records(c)}});
    CHECK(corpus.overall.total == 10349);
    CHECK(corpus.overall.unique + corpus.overall.duplicates == 10349);
    CHECK(corpus.batch_reports[0].total == 5422);
}

TEST_CASE("conflicting duplicate keeps first title and warns") {
    MedlineRecord a, b;
    a.pmid = b.pmid = 1;
    a.title = "first";
    b.title = "second";
    a.abstract = b.abstract = "same abstract";
    auto corpus = dedup({{"X", {a, b}}});
    REQUIRE(corpus.records.size() == 1);
    CHECK(corpus.records[0].title == "first");
    REQUIRE(corpus.warnings.size() == 1);
    CHECK(corpus.warnings[0].find("conflicting") != std::string::npos);
}

TEST_CASE("dedup is idempotent and its arithmetic is exact") {
    testutil::Rng rng(7);
    for (int round = 0; round < 30; ++round) {
        std::vector<std::pair<std::string, std::vector<MedlineRecord>>> batches;
        std::size_t nbatches = 1 + rng.below(4);
        for (std::size_t b = 0; b < nbatches; ++b) {
            std::vector<long long> pmids;
            for (std::size_t i = 0; i < rng.below(30); ++i)
                pmids.push_back(static_cast<long long>(1 + rng.below(40)));
            batches.emplace_back("b" + std::to_string(b), make_records(pmids));
        }
        auto corpus = dedup(batches);
        CHECK(corpus.overall.unique + corpus.overall.duplicates ==
              corpus.overall.total);

        // Output PMIDs are distinct.
        std::set<long long> seen;
        for (const auto& rec : corpus.records)
            CHECK(seen.insert(rec.pmid).second);

        // Re-deduping the output is the identity.
        auto again = dedup({{"all", corpus.records}});
        CHECK(again.records.size() == corpus.records.size());
        CHECK(again.overall.duplicates == 0);
    }
}

TEST_CASE("records without an abstract are kept but flagged") {
    MedlineRecord rec;
    rec.pmid = 5;
    rec.title = "only a title";
    auto corpus = dedup({{"X", {rec}}});
    REQUIRE(corpus.records.size() == 1);
    REQUIRE(corpus.warnings.size() == 1);
    CHECK(corpus.warnings[0].find("no abstract") != std::string::npos);
}

TEST_CASE("dedup report CSV layout") {
    auto corpus = dedup({{"A", make_records({1, 2})}, {"B", make_records({2})}});
    std::string csv = dedup_report_csv(corpus);
    CHECK(csv ==
          "batch,total,duplicates,unique\n"
          "A,2,0,2\n"
          "B,1,1,0\n"
          "overall,3,1,2\n");
}
