#pragma once

// Standoff annotation model: T-lines for text-bound spans, E-lines for
// biomolecular events referencing them by id.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bioevent {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
    std::size_t line;
};

/// Event-type registry. Canonical ids use underscores
/// ("Positive_regulation"); the standoff listings print spaces. Both forms
/// are accepted on input; listings are emitted in the space form.
class EventTypes {
public:
    static const std::vector<std::string>& builtin() {
        static const std::vector<std::string> types = {
            "Gene_expression",  "Transcription",      "Protein_catabolism",
            "Phosphorylation",  "Localization",       "Binding",
            "Regulation",       "Positive_regulation", "Negative_regulation",
        };
        return types;
    }

    EventTypes() : known_(builtin().begin(), builtin().end()) {}

    static std::string canonical(std::string_view name) {
        std::string s(name);
        std::replace(s.begin(), s.end(), ' ', '_');
        return s;
    }

    static std::string display(std::string_view canonical_id) {
        std::string s(canonical_id);
        std::replace(s.begin(), s.end(), '_', ' ');
        return s;
    }

    bool contains(std::string_view name) const {
        return known_.count(canonical(name)) > 0;
    }

    // Config-supplied lexicons may introduce additional types.
    void add(std::string_view name) { known_.insert(canonical(name)); }

private:
    std::set<std::string, std::less<>> known_;
};

struct TextBound {
    std::string id;       // "T" + digits
    std::string kind;     // "Protein" or a canonical event type
    std::size_t start = 0;
    std::size_t end = 0;
    std::optional<std::string> surface;

    bool operator==(const TextBound&) const = default;
};

struct EventArg {
    std::string role;    // Theme | Theme2 | Cause
    std::string target;  // T-id or E-id

    bool operator==(const EventArg&) const = default;
};

struct BioEvent {
    std::string id;          // "E" + digits
    std::string event_type;  // canonical form
    std::string trigger;     // T-id
    std::vector<EventArg> args;

    bool operator==(const BioEvent&) const = default;
};

struct AnnotationSet {
    long long doc_pmid = 0;
    std::map<std::string, TextBound> textbounds;
    std::map<std::string, BioEvent> events;

    bool operator==(const AnnotationSet&) const = default;
};

namespace detail {

inline long long id_number(std::string_view id) {
    long long n = 0;
    for (char c : id.substr(1)) n = n * 10 + (c - '0');
    return n;
}

inline bool is_valid_role(std::string_view r) {
    return r == "Theme" || r == "Theme2" || r == "Cause";
}

}  // namespace detail

/// Parses one document's standoff listing.
/// T-line: `Tn kind start end [surface]` (kind may contain spaces, e.g.
/// "Positive regulation"); E-line: `En type: Tn role: target ...`.
inline AnnotationSet parse_standoff(std::string_view text) {
    static const std::regex tb_re(
        R"(^(T\d+)[ \t]+(.+?)[ \t]+(\d+)[ \t]+(\d+)(?:[ \t]+(.*\S))?[ \t]*$)");
    static const std::regex ev_head_re(
        R"(^(E\d+)[ \t]+(.+?):[ \t]+(T\d+)((?:[ \t]+\w+:[ \t]+[TE]\d+)+)[ \t]*$)");
    static const std::regex arg_re(R"((\w+):[ \t]+([TE]\d+))");

    AnnotationSet set;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos
                                              ? text.size() - pos
                                              : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::smatch m;
        if (std::regex_match(line, m, tb_re)) {
            TextBound tb;
            tb.id = m[1];
            tb.kind = EventTypes::canonical(m[2].str());
            tb.start = std::stoull(m[3]);
            tb.end = std::stoull(m[4]);
            if (m[5].matched) tb.surface = m[5].str();
            if (tb.start >= tb.end)
                throw ParseError("empty or inverted span in " + tb.id, line_no);
            if (!set.textbounds.emplace(tb.id, tb).second)
                throw ParseError("duplicate id " + tb.id, line_no);
        } else if (std::regex_match(line, m, ev_head_re)) {
            BioEvent ev;
            ev.id = m[1];
            ev.event_type = EventTypes::canonical(m[2].str());
            ev.trigger = m[3];
            std::string rest = m[4];
            for (auto it = std::sregex_iterator(rest.begin(), rest.end(), arg_re);
                 it != std::sregex_iterator(); ++it) {
                std::string role = (*it)[1];
                if (!detail::is_valid_role(role))
                    throw ParseError("unknown role " + role + " in " + ev.id,
                                     line_no);
                ev.args.push_back({role, (*it)[2]});
            }
            if (!set.events.emplace(ev.id, ev).second)
                throw ParseError("duplicate id " + ev.id, line_no);
        } else {
            throw ParseError("unparseable annotation line: " + line, line_no);
        }
    }
    return set;
}

/// Inverse of parse_standoff. Records are emitted in ascending numeric id
/// order with single-space separators; event types in their space form.
inline std::string serialize_standoff(const AnnotationSet& set) {
    auto by_number = [](const std::string& a, const std::string& b) {
        return detail::id_number(a) < detail::id_number(b);
    };

    std::vector<std::string> t_ids, e_ids;
    for (const auto& [id, _] : set.textbounds) t_ids.push_back(id);
    for (const auto& [id, _] : set.events) e_ids.push_back(id);
    std::sort(t_ids.begin(), t_ids.end(), by_number);
    std::sort(e_ids.begin(), e_ids.end(), by_number);

    auto resolves = [&](const std::string& target) {
        return set.textbounds.count(target) || set.events.count(target);
    };

    std::ostringstream out;
    for (const auto& id : t_ids) {
        const TextBound& tb = set.textbounds.at(id);
        out << tb.id << ' ' << EventTypes::display(tb.kind) << ' ' << tb.start
            << ' ' << tb.end;
        if (tb.surface) out << ' ' << *tb.surface;
        out << '\n';
    }
    for (const auto& id : e_ids) {
        const BioEvent& ev = set.events.at(id);
        if (!set.textbounds.count(ev.trigger))
            throw std::runtime_error("dangling trigger " + ev.trigger + " in " +
                                     ev.id);
        out << ev.id << ' ' << EventTypes::display(ev.event_type) << ": "
            << ev.trigger;
        for (const auto& arg : ev.args) {
            if (!resolves(arg.target))
                throw std::runtime_error("dangling reference " + arg.target +
                                         " in " + ev.id);
            out << ' ' << arg.role << ": " << arg.target;
        }
        out << '\n';
    }
    return out.str();
}

enum class ValidationMode { Strict, Lenient };

struct ValidationFinding {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;

    bool ok(ValidationMode mode) const {
        if (mode == ValidationMode::Strict) return findings.empty();
        return std::none_of(findings.begin(), findings.end(), [](const auto& f) {
            return f.severity == ValidationFinding::Severity::Error;
        });
    }
    bool empty() const { return findings.empty(); }
};

/// Checks referential integrity, offset bounds, span/surface consistency,
/// and acyclicity of event-to-event references. Span/surface mismatches are
/// warnings (errors only under strict interpretation by the caller); dangling
/// references and cycles are always errors.
inline ValidationReport validate(const AnnotationSet& set,
                                 const std::optional<std::string>& doc_text =
                                     std::nullopt,
                                 ValidationMode mode = ValidationMode::Lenient) {
    using Sev = ValidationFinding::Severity;
    ValidationReport report;
    auto add = [&](Sev s, std::string msg) {
        report.findings.push_back({s, std::move(msg)});
    };
    Sev mismatch_sev = mode == ValidationMode::Strict ? Sev::Error : Sev::Warning;

    for (const auto& [id, tb] : set.textbounds) {
        if (doc_text) {
            if (tb.end > doc_text->size()) {
                add(mismatch_sev, id + ": span [" + std::to_string(tb.start) +
                                      ", " + std::to_string(tb.end) +
                                      ") exceeds document length " +
                                      std::to_string(doc_text->size()));
                continue;
            }
            if (tb.surface &&
                doc_text->substr(tb.start, tb.end - tb.start) != *tb.surface)
                add(mismatch_sev, id + ": surface does not match document span");
        }
        if (tb.surface && tb.surface->size() != tb.end - tb.start)
            add(mismatch_sev,
                id + ": span width " + std::to_string(tb.end - tb.start) +
                    " != surface length " + std::to_string(tb.surface->size()));
    }

    for (const auto& [id, ev] : set.events) {
        if (!set.textbounds.count(ev.trigger))
            add(Sev::Error, id + ": dangling trigger " + ev.trigger);
        else if (set.textbounds.at(ev.trigger).kind != ev.event_type)
            add(mismatch_sev, id + ": trigger kind " +
                                  set.textbounds.at(ev.trigger).kind +
                                  " differs from event type " + ev.event_type);
        if (ev.args.empty()) add(Sev::Error, id + ": event has no arguments");
        for (const auto& arg : ev.args) {
            bool found = arg.target[0] == 'T' ? set.textbounds.count(arg.target)
                                              : set.events.count(arg.target) > 0;
            if (!found)
                add(Sev::Error, id + ": dangling reference " + arg.target);
        }
    }

    // Cycle check over E->E references.
    std::map<std::string, int> color;  // 0 unvisited, 1 on stack, 2 done
    auto dfs = [&](auto&& self, const std::string& id) -> bool {
        int& c = color[id];
        if (c == 1) return false;
        if (c == 2) return true;
        c = 1;
        auto it = set.events.find(id);
        if (it != set.events.end())
            for (const auto& arg : it->second.args)
                if (arg.target[0] == 'E' && set.events.count(arg.target))
                    if (!self(self, arg.target)) return false;
        c = 2;
        return true;
    };
    for (const auto& [id, _] : set.events)
        if (!dfs(dfs, id)) {
            add(Sev::Error, "cycle in event references involving " + id);
            break;
        }

    return report;
}

/// Parses a concatenated multi-document stream with `#PMID <n>` separators.
inline std::vector<std::pair<long long, AnnotationSet>> parse_standoff_stream(
    std::string_view text) {
    std::vector<std::pair<long long, AnnotationSet>> docs;
    std::string current;
    long long pmid = 0;
    bool have_doc = false;
    auto flush = [&]() {
        if (have_doc) {
            AnnotationSet set = parse_standoff(current);
            set.doc_pmid = pmid;
            docs.emplace_back(pmid, std::move(set));
        }
        current.clear();
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.starts_with("#PMID")) {
            flush();
            pmid = std::stoll(std::string(line.substr(5)));
            have_doc = true;
        } else if (have_doc || line.find_first_not_of(" \t\r") !=
                                   std::string_view::npos) {
            have_doc = true;
            current.append(line);
            current.push_back('\n');
        }
    }
    flush();
    return docs;
}

inline std::string serialize_standoff_stream(
    const std::vector<std::pair<long long, AnnotationSet>>& docs) {
    std::string out;
    for (const auto& [pmid, set] : docs) {
        out += "#PMID " + std::to_string(pmid) + "\n";
        out += serialize_standoff(set);
    }
    return out;
}

}  // namespace bioevent
