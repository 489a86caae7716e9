#pragma once

// NLM MEDLINE flat-file parsing and corpus assembly. Only the PMID, TI and
// AB fields are consumed; everything else is skipped.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace bioevent {

struct MedlineRecord {
    long long pmid = 0;
    std::string title;
    std::string abstract;
    std::string source_query;  // optional label, set by the caller

    bool operator==(const MedlineRecord&) const = default;
};

struct MedlineParseResult {
    std::vector<MedlineRecord> records;
    std::vector<std::string> warnings;
};

namespace detail {

inline void rstrip(std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
}

}  // namespace detail

/// Parses MEDLINE flat format: `TAG - value` lines (tag padded to 4 chars),
/// continuation lines indented 6 spaces, blank line between records.
inline MedlineParseResult parse_medline(std::string_view raw) {
    MedlineParseResult result;

    struct Block {
        std::optional<long long> pmid;
        std::string title, abstract;
        bool bad_pmid = false;
    };
    Block block;
    std::string* active_field = nullptr;

    auto flush = [&]() {
        if (block.pmid) {
            MedlineRecord rec;
            rec.pmid = *block.pmid;
            rec.title = block.title;
            rec.abstract = block.abstract;
            result.records.push_back(std::move(rec));
        } else if (!block.title.empty() || !block.abstract.empty() ||
                   block.bad_pmid) {
            result.warnings.push_back("record block without PMID skipped");
        }
        block = Block{};
        active_field = nullptr;
    };

    std::size_t pos = 0, line_no = 0;
    while (pos <= raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        std::string line(raw.substr(
            pos, nl == std::string_view::npos ? raw.size() - pos : nl - pos));
        pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
        ++line_no;
        detail::rstrip(line);

        if (line.empty()) {
            flush();
            continue;
        }
        if (line.starts_with("      ")) {  // continuation, 6-space indent
            if (active_field) {
                if (!active_field->empty()) active_field->push_back(' ');
                active_field->append(line.substr(6));
            }
            continue;
        }

        // Tag line: 4-char tag (space padded), then "- ".
        std::size_t dash = line.find("- ");
        if (dash == std::string::npos || dash > 4) {
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": malformed tag line ignored");
            active_field = nullptr;
            continue;
        }
        std::string tag = line.substr(0, dash);
        detail::rstrip(tag);
        std::string value = line.substr(dash + 2);

        active_field = nullptr;
        if (tag == "PMID") {
            if (block.pmid) flush();  // new record without blank separator
            try {
                long long pmid = std::stoll(value);
                if (pmid > 0)
                    block.pmid = pmid;
                else
                    block.bad_pmid = true;
            } catch (const std::exception&) {
                block.bad_pmid = true;
                result.warnings.push_back("line " + std::to_string(line_no) +
                                          ": unparseable PMID '" + value + "'");
            }
        } else if (tag == "TI") {
            block.title = value;
            active_field = &block.title;
        } else if (tag == "AB") {
            block.abstract = value;
            active_field = &block.abstract;
        }
    }
    flush();
    return result;
}

/// Emits the (PMID, TI, AB) projection back in MEDLINE format, unfolded.
inline std::string serialize_medline(const std::vector<MedlineRecord>& records) {
    std::ostringstream out;
    bool first = true;
    for (const auto& rec : records) {
        if (!first) out << '\n';
        first = false;
        out << "PMID- " << rec.pmid << '\n';
        if (!rec.title.empty()) out << "TI  - " << rec.title << '\n';
        if (!rec.abstract.empty()) out << "AB  - " << rec.abstract << '\n';
    }
    return out.str();
}

struct DedupBatchReport {
    std::string label;
    std::size_t total = 0;
    std::size_t duplicates = 0;
    std::size_t unique = 0;
};

struct Corpus {
    std::vector<MedlineRecord> records;
    std::vector<DedupBatchReport> batch_reports;
    DedupBatchReport overall;  // label "overall"
    std::vector<std::string> warnings;
};

/// Merges labelled batches; the first occurrence of a PMID wins (batch
/// order, then record order). Conflicting duplicates keep the first version
/// and emit a warning. Records without an abstract are kept but flagged.
inline Corpus dedup(
    const std::vector<std::pair<std::string, std::vector<MedlineRecord>>>&
        batches) {
    Corpus corpus;
    corpus.overall.label = "overall";
    std::map<long long, std::size_t> seen;  // pmid -> index in corpus.records

    for (const auto& [label, records] : batches) {
        DedupBatchReport report;
        report.label = label;
        for (const auto& rec : records) {
            ++report.total;
            auto it = seen.find(rec.pmid);
            if (it == seen.end()) {
                seen.emplace(rec.pmid, corpus.records.size());
                MedlineRecord kept = rec;
                kept.source_query = label;
                if (kept.abstract.empty())
                    corpus.warnings.push_back(
                        "pmid " + std::to_string(kept.pmid) + ": no abstract");
                corpus.records.push_back(std::move(kept));
                ++report.unique;
            } else {
                ++report.duplicates;
                const MedlineRecord& kept = corpus.records[it->second];
                if (kept.title != rec.title || kept.abstract != rec.abstract)
                    corpus.warnings.push_back(
                        "pmid " + std::to_string(rec.pmid) +
                        ": conflicting duplicate, first occurrence kept");
            }
        }
        corpus.overall.total += report.total;
        corpus.overall.duplicates += report.duplicates;
        corpus.overall.unique += report.unique;
        corpus.batch_reports.push_back(std::move(report));
    }
    return corpus;
}

/// Dedup report as CSV: batch,total,duplicates,unique.
inline std::string dedup_report_csv(const Corpus& corpus) {
    std::ostringstream out;
    out << "batch,total,duplicates,unique\n";
    for (const auto& r : corpus.batch_reports)
        out << r.label << ',' << r.total << ',' << r.duplicates << ','
            << r.unique << '\n';
    out << corpus.overall.label << ',' << corpus.overall.total << ','
        << corpus.overall.duplicates << ',' << corpus.overall.unique << '\n';
    return out.str();
}

}  // namespace bioevent
