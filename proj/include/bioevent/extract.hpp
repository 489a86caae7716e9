#pragma once

// Deterministic event extraction: sentence splitting, gazetteer entity
// matching, trigger-lexicon matching and lexico-syntactic argument
// patterns. Replaces the learned trigger/argument classifiers behind the
// TriggerDetector seam.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bioevent/standoff.hpp"

namespace bioevent {

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

// ---------------------------------------------------------------------------
// Tokenization

struct Token {
    Span span;        // raw whitespace-delimited extent
    std::string norm; // lowercased, surrounding punctuation stripped
};

namespace detail {

inline bool is_token_punct(unsigned char c) {
    return std::ispunct(c) && c != '-';
}

inline std::vector<Token> tokenize(std::string_view text, std::size_t base = 0) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        std::size_t a = i, b = j;
        while (a < b && is_token_punct(static_cast<unsigned char>(text[a]))) ++a;
        while (b > a && is_token_punct(static_cast<unsigned char>(text[b - 1])))
            --b;
        if (a < b) {
            Token tok;
            tok.span = {base + a, base + b};
            tok.norm.reserve(b - a);
            for (std::size_t k = a; k < b; ++k)
                tok.norm.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(text[k]))));
            tokens.push_back(std::move(tok));
        }
        i = j;
    }
    return tokens;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sentence splitting

/// Splits on `.`, `!`, `?` followed by whitespace and an uppercase letter,
/// guarded by a small abbreviation list. Spans partition the text.
inline std::vector<Span> split_sentences(std::string_view text) {
    static const std::vector<std::string> abbreviations = {
        "vs.", "e.g.", "i.e.", "Fig.", "et al.", "Dr.", "cf.", "ca.", "approx.",
    };

    std::vector<Span> spans;
    if (text.empty()) return spans;

    auto ends_with_abbrev = [&](std::size_t end) {
        for (const auto& abbr : abbreviations) {
            if (end + 1 < abbr.size()) continue;
            if (text.substr(end + 1 - abbr.size(), abbr.size()) == abbr)
                return true;
        }
        return false;
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (!std::isspace(static_cast<unsigned char>(text[i + 1]))) continue;
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j >= text.size()) break;
        if (!std::isupper(static_cast<unsigned char>(text[j]))) continue;
        if (c == '.' && ends_with_abbrev(i)) continue;
        spans.push_back({start, j});
        start = j;
    }
    spans.push_back({start, text.size()});
    return spans;
}

// ---------------------------------------------------------------------------
// Trigger lexicon

/// Lowercase prefix patterns mapped to event types; a token triggers when a
/// pattern is a prefix of its normalized form (longest pattern wins).
class TriggerLexicon {
public:
    void add(std::string pattern, std::string event_type) {
        if (pattern.empty())
            throw std::invalid_argument("empty trigger pattern");
        for (char& c : pattern)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        std::string type = EventTypes::canonical(event_type);
        auto [it, inserted] = entries_.emplace(std::move(pattern), type);
        if (!inserted && it->second != type)
            throw std::invalid_argument("pattern '" + it->first +
                                        "' maps to two event types");
    }

    std::optional<std::string> lookup(std::string_view token) const {
        // Longest matching prefix.
        for (std::size_t len = token.size(); len > 0; --len) {
            auto it = entries_.find(std::string(token.substr(0, len)));
            if (it != entries_.end()) return it->second;
        }
        return std::nullopt;
    }

    bool empty() const { return entries_.empty(); }
    const std::map<std::string, std::string>& entries() const { return entries_; }

    /// Line format: `pattern<TAB>EventType`; '#' starts a comment.
    static TriggerLexicon load(std::string_view text) {
        TriggerLexicon lex;
        for_each_tsv_line(text, "lexicon", [&](const std::string& a,
                                               const std::string& b) {
            lex.add(a, b);
        });
        return lex;
    }

    template <class Fn>
    static void for_each_tsv_line(std::string_view text, const char* what,
                                  Fn&& fn) {
        std::size_t pos = 0, line_no = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line(text.substr(
                pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw ParseError(std::string(what) + ": expected TAB-separated pair",
                                 line_no);
            fn(line.substr(0, tab), line.substr(tab + 1));
        }
    }

private:
    std::map<std::string, std::string> entries_;
};

/// Seam for replacing the lexicon matcher with a learned detector.
using TriggerDetector =
    std::function<std::vector<TextBound>(std::string_view /*doc_text*/, Span)>;

/// Every token whose normalized form starts with a lexicon pattern yields a
/// trigger TextBound of the mapped type, offsets relative to the document.
inline std::vector<TextBound> match_triggers(std::string_view doc_text,
                                             Span sentence,
                                             const TriggerLexicon& lexicon) {
    std::vector<TextBound> triggers;
    auto tokens = detail::tokenize(
        doc_text.substr(sentence.start, sentence.end - sentence.start),
        sentence.start);
    for (const auto& tok : tokens) {
        if (auto type = lexicon.lookup(tok.norm)) {
            TextBound tb;
            tb.kind = *type;
            tb.start = tok.span.start;
            tb.end = tok.span.end;
            triggers.push_back(std::move(tb));
        }
    }
    return triggers;
}

// ---------------------------------------------------------------------------
// Gazetteer

class Gazetteer {
public:
    void add(const std::string& mention, std::string symbol) {
        std::string key = normalize(mention);
        auto [it, inserted] = entries_.emplace(key, std::move(symbol));
        if (!inserted)
            throw std::invalid_argument("duplicate gazetteer mention '" +
                                        mention + "'");
        max_words_ = std::max(max_words_, count_words(key));
    }

    std::optional<std::string> canonical(std::string_view mention) const {
        auto it = entries_.find(normalize(mention));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t max_words() const { return max_words_; }
    const std::map<std::string, std::string>& entries() const { return entries_; }

    /// Line format: `mention<TAB>SYMBOL`.
    static Gazetteer load(std::string_view text) {
        Gazetteer gaz;
        TriggerLexicon::for_each_tsv_line(
            text, "gazetteer",
            [&](const std::string& a, const std::string& b) { gaz.add(a, b); });
        return gaz;
    }

    static std::string normalize(std::string_view mention) {
        std::string out;
        bool space_pending = false;
        for (char raw : mention) {
            unsigned char c = static_cast<unsigned char>(raw);
            if (std::isspace(c)) {
                space_pending = !out.empty();
            } else {
                if (space_pending) out.push_back(' ');
                space_pending = false;
                out.push_back(static_cast<char>(std::tolower(c)));
            }
        }
        return out;
    }

private:
    static std::size_t count_words(std::string_view s) {
        return 1 + static_cast<std::size_t>(
                       std::count(s.begin(), s.end(), ' '));
    }

    std::map<std::string, std::string> entries_;
    std::size_t max_words_ = 0;
};

/// Longest non-overlapping case-insensitive matches; each match yields a
/// Protein TextBound whose surface carries the canonical symbol.
inline std::vector<TextBound> match_entities(std::string_view doc_text,
                                             Span sentence,
                                             const Gazetteer& gazetteer) {
    std::vector<TextBound> entities;
    if (gazetteer.empty()) return entities;
    auto tokens = detail::tokenize(
        doc_text.substr(sentence.start, sentence.end - sentence.start),
        sentence.start);
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t best_len = 0;
        std::string best_symbol;
        std::size_t max_len = std::min(gazetteer.max_words(), tokens.size() - i);
        for (std::size_t len = max_len; len >= 1; --len) {
            Span cand{tokens[i].span.start, tokens[i + len - 1].span.end};
            auto sym = gazetteer.canonical(
                doc_text.substr(cand.start, cand.end - cand.start));
            if (sym) {
                best_len = len;
                best_symbol = *sym;
                break;
            }
        }
        if (best_len > 0) {
            TextBound tb;
            tb.kind = "Protein";
            tb.start = tokens[i].span.start;
            tb.end = tokens[i + best_len - 1].span.end;
            tb.surface = best_symbol;
            entities.push_back(std::move(tb));
            i += best_len;
        } else {
            ++i;
        }
    }
    return entities;
}

// ---------------------------------------------------------------------------
// Argument patterns

struct PatternSlot {
    enum class Kind { Entity, Trigger, Gap, Literal };
    Kind kind;
    std::string text;     // trigger event type, or literal word
    std::size_t max_gap = 0;
};

/// One lexico-syntactic template. Slots are matched in order around the
/// single TRIGGER slot; GAP(n) allows up to n intervening tokens. The
/// `anywhere` flag relaxes the (single) ENTITY slot to any entity in the
/// window, emitting one event per entity. `mirror` additionally emits the
/// Theme/Theme2-swapped event; `adjacent_scope` widens the match window to
/// the following sentence.
struct ArgPattern {
    std::string name;
    std::vector<PatternSlot> slots;
    std::vector<std::pair<std::string, std::size_t>> emissions;  // role -> slot# (1-based)
    bool mirror = false;
    bool adjacent_scope = false;
    bool anywhere = false;

    std::string trigger_type() const {
        for (const auto& s : slots)
            if (s.kind == PatternSlot::Kind::Trigger) return s.text;
        return {};
    }
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace detail

/// Parses the one-line pattern mini-language:
///   `name: SLOT SLOT ... => role=slot#,role=slot# [; flag flag ...]`
/// with slots ENTITY, TRIGGER(Type), GAP(n), LITERAL(word) and flags
/// `mirror`, `anywhere`, `scope=adj`.
inline ArgPattern parse_pattern(std::string_view line, std::size_t line_no = 0) {
    ArgPattern pat;
    std::string s(line);

    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw ParseError("pattern missing 'name:' prefix", line_no);
    pat.name = s.substr(0, colon);

    std::string rest = s.substr(colon + 1);
    std::string flags;
    if (auto semi = rest.find(';'); semi != std::string::npos) {
        flags = rest.substr(semi + 1);
        rest = rest.substr(0, semi);
    }
    auto arrow = rest.find("=>");
    if (arrow == std::string::npos)
        throw ParseError("pattern missing '=>' emission rule", line_no);
    std::string slot_part = rest.substr(0, arrow);
    std::string emit_part = rest.substr(arrow + 2);

    std::size_t trigger_slots = 0, entity_slots = 0;
    for (const auto& tok : detail::split_ws(slot_part)) {
        PatternSlot slot;
        if (tok == "ENTITY") {
            slot.kind = PatternSlot::Kind::Entity;
            ++entity_slots;
        } else if (tok.starts_with("TRIGGER(") && tok.ends_with(")")) {
            slot.kind = PatternSlot::Kind::Trigger;
            slot.text = EventTypes::canonical(tok.substr(8, tok.size() - 9));
            ++trigger_slots;
        } else if (tok.starts_with("GAP(") && tok.ends_with(")")) {
            slot.kind = PatternSlot::Kind::Gap;
            slot.max_gap = std::stoull(tok.substr(4, tok.size() - 5));
        } else if (tok.starts_with("LITERAL(") && tok.ends_with(")")) {
            slot.kind = PatternSlot::Kind::Literal;
            slot.text = tok.substr(8, tok.size() - 9);
            for (char& c : slot.text)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            throw ParseError("unknown slot '" + tok + "'", line_no);
        }
        pat.slots.push_back(std::move(slot));
    }
    if (trigger_slots != 1)
        throw ParseError("pattern needs exactly one TRIGGER slot", line_no);
    if (entity_slots == 0)
        throw ParseError("pattern needs at least one ENTITY slot", line_no);

    for (const auto& spec : detail::split_ws(emit_part)) {
        std::istringstream in(spec);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ParseError("bad emission '" + item + "'", line_no);
            std::string role = item.substr(0, eq);
            std::size_t slot_no = std::stoull(item.substr(eq + 1));
            if (slot_no == 0 || slot_no > pat.slots.size() ||
                pat.slots[slot_no - 1].kind != PatternSlot::Kind::Entity)
                throw ParseError("emission '" + item +
                                     "' does not reference an ENTITY slot",
                                 line_no);
            pat.emissions.emplace_back(role, slot_no);
        }
    }
    if (pat.emissions.empty())
        throw ParseError("pattern emits no roles", line_no);

    for (const auto& flag : detail::split_ws(flags)) {
        if (flag == "mirror")
            pat.mirror = true;
        else if (flag == "anywhere")
            pat.anywhere = true;
        else if (flag == "scope=adj")
            pat.adjacent_scope = true;
        else
            throw ParseError("unknown pattern flag '" + flag + "'", line_no);
    }
    return pat;
}

inline std::vector<ArgPattern> load_patterns(std::string_view text) {
    std::vector<ArgPattern> patterns;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line(text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos ||
            line[line.find_first_not_of(" \t")] == '#')
            continue;
        patterns.push_back(parse_pattern(line, line_no));
    }
    return patterns;
}

namespace detail {

// Index of the first token starting at or after `pos`.
inline std::size_t token_at_or_after(const std::vector<Token>& tokens,
                                     std::size_t pos) {
    std::size_t i = 0;
    while (i < tokens.size() && tokens[i].span.start < pos) ++i;
    return i;
}

// Index one past the last token ending at or before `pos`.
inline std::size_t token_end_before(const std::vector<Token>& tokens,
                                    std::size_t pos) {
    std::size_t i = tokens.size();
    while (i > 0 && tokens[i - 1].span.end > pos) --i;
    return i;
}

struct PatternMatch {
    // entity index (into the entities vector) per ENTITY slot, keyed by slot#.
    std::map<std::size_t, std::size_t> bound_entities;
};

// Matches the pattern around one trigger. Slots before the TRIGGER slot are
// matched right-to-left from the trigger; slots after it left-to-right.
// ENTITY slots bind the nearest candidate within the pending gap budget.
inline std::optional<PatternMatch> match_pattern_at(
    const ArgPattern& pat, const std::vector<Token>& tokens,
    const TextBound& trigger, const std::vector<TextBound>& entities) {
    std::size_t trig_slot = 0;
    while (pat.slots[trig_slot].kind != PatternSlot::Kind::Trigger) ++trig_slot;

    PatternMatch match;

    // Entities sorted by start; find candidates on each side of the trigger.
    auto entity_sorted_indices = [&]() {
        std::vector<std::size_t> idx(entities.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return entities[a].start < entities[b].start;
        });
        return idx;
    }();

    // Between two anchor slots, the allowed token distance is the sum of
    // GAP maxima written between them; with no GAP slot it is unbounded
    // within the window, so GAP(0) spells strict adjacency.
    struct GapBudget {
        std::size_t tokens = 0;
        bool bounded = false;

        bool allows(std::size_t between) const {
            return !bounded || between <= tokens;
        }
        void add(std::size_t n) {
            bounded = true;
            tokens += n;
        }
        void reset() { *this = GapBudget{}; }
    };

    // Backward side: slots [0, trig_slot) consumed right-to-left.
    {
        std::size_t cursor = token_end_before(tokens, trigger.start);
        GapBudget gap;
        for (std::size_t s = trig_slot; s-- > 0;) {
            const PatternSlot& slot = pat.slots[s];
            if (slot.kind == PatternSlot::Kind::Gap) {
                gap.add(slot.max_gap);
                continue;
            }
            if (slot.kind == PatternSlot::Kind::Literal) {
                bool found = false;
                for (std::size_t skip = 0; gap.allows(skip) && cursor > skip;
                     ++skip) {
                    if (tokens[cursor - 1 - skip].norm == slot.text) {
                        cursor = cursor - 1 - skip;
                        gap.reset();
                        found = true;
                        break;
                    }
                }
                if (!found) return std::nullopt;
                continue;
            }
            // ENTITY: nearest entity ending before the cursor, within budget.
            bool bound = false;
            for (auto it = entity_sorted_indices.rbegin();
                 it != entity_sorted_indices.rend(); ++it) {
                const TextBound& ent = entities[*it];
                std::size_t ent_last = token_end_before(tokens, ent.end);
                if (ent_last > cursor) continue;
                std::size_t between = cursor - ent_last;
                if (!gap.allows(between)) return std::nullopt;  // nearest too far
                match.bound_entities[s + 1] = *it;
                cursor = token_at_or_after(tokens, ent.start);
                gap.reset();
                bound = true;
                break;
            }
            if (!bound) return std::nullopt;
        }
    }

    // Forward side: slots (trig_slot, end) consumed left-to-right.
    {
        std::size_t cursor = token_at_or_after(tokens, trigger.end);
        GapBudget gap;
        for (std::size_t s = trig_slot + 1; s < pat.slots.size(); ++s) {
            const PatternSlot& slot = pat.slots[s];
            if (slot.kind == PatternSlot::Kind::Gap) {
                gap.add(slot.max_gap);
                continue;
            }
            if (slot.kind == PatternSlot::Kind::Literal) {
                bool found = false;
                for (std::size_t skip = 0;
                     gap.allows(skip) && cursor + skip < tokens.size(); ++skip) {
                    if (tokens[cursor + skip].norm == slot.text) {
                        cursor = cursor + skip + 1;
                        gap.reset();
                        found = true;
                        break;
                    }
                }
                if (!found) return std::nullopt;
                continue;
            }
            // ENTITY: nearest entity starting at or after the cursor, within
            // budget.
            bool bound = false;
            for (std::size_t idx : entity_sorted_indices) {
                const TextBound& ent = entities[idx];
                std::size_t ent_first = token_at_or_after(tokens, ent.start);
                if (ent_first < cursor) continue;
                std::size_t between = ent_first - cursor;
                if (!gap.allows(between)) return std::nullopt;
                match.bound_entities[s + 1] = idx;
                cursor = token_at_or_after(tokens, ent.end);
                gap.reset();
                bound = true;
                break;
            }
            if (!bound) return std::nullopt;
        }
    }

    return match;
}

}  // namespace detail

/// Applies the ordered pattern list to one window. Per trigger, the first
/// pattern (in list order, type-matching) that instantiates emits its
/// events; `anywhere` patterns emit one event per entity in the window.
/// Entity and trigger ids must already be assigned by the caller.
inline std::vector<BioEvent> apply_patterns(
    std::string_view doc_text, Span window,
    const std::vector<TextBound>& triggers,
    const std::vector<TextBound>& entities,
    const std::vector<ArgPattern>& patterns, std::size_t& next_event_number) {
    std::vector<BioEvent> events;
    auto tokens = detail::tokenize(
        doc_text.substr(window.start, window.end - window.start), window.start);

    for (const auto& trigger : triggers) {
        for (const auto& pat : patterns) {
            if (pat.trigger_type() != trigger.kind) continue;

            if (pat.anywhere) {
                bool emitted = false;
                for (std::size_t idx = 0; idx < entities.size(); ++idx) {
                    BioEvent ev;
                    ev.id = "E" + std::to_string(next_event_number);
                    ev.event_type = trigger.kind;
                    ev.trigger = trigger.id;
                    for (const auto& [role, _] : pat.emissions)
                        ev.args.push_back({role, entities[idx].id});
                    ++next_event_number;
                    events.push_back(std::move(ev));
                    emitted = true;
                }
                if (emitted) break;
                continue;
            }

            auto match = detail::match_pattern_at(pat, tokens, trigger, entities);
            if (!match) continue;

            BioEvent ev;
            ev.id = "E" + std::to_string(next_event_number);
            ev.event_type = trigger.kind;
            ev.trigger = trigger.id;
            for (const auto& [role, slot_no] : pat.emissions)
                ev.args.push_back(
                    {role, entities[match->bound_entities.at(slot_no)].id});
            ++next_event_number;
            events.push_back(ev);

            if (pat.mirror) {
                BioEvent mirror = ev;
                mirror.id = "E" + std::to_string(next_event_number);
                ++next_event_number;
                for (auto& arg : mirror.args) {
                    if (arg.role == "Theme")
                        arg.role = "Theme2";
                    else if (arg.role == "Theme2")
                        arg.role = "Theme";
                }
                std::sort(mirror.args.begin(), mirror.args.end(),
                          [](const EventArg& a, const EventArg& b) {
                              return a.role < b.role;
                          });
                events.push_back(std::move(mirror));
            }
            break;  // first matching pattern wins for this trigger
        }
    }
    return events;
}

// ---------------------------------------------------------------------------
// Document driver

/// Extracts events from one document. When `gold_entities` is non-null it
/// replaces gazetteer matching entirely; triggers and arguments are still
/// filled by the lexicon and patterns. Trigger ids start at T1000 so they
/// never collide with gold entity ids.
inline AnnotationSet extract_document(
    long long pmid, std::string_view doc_text, const TriggerLexicon& lexicon,
    const Gazetteer& gazetteer, const std::vector<ArgPattern>& patterns,
    const std::vector<TextBound>* gold_entities = nullptr) {
    AnnotationSet out;
    out.doc_pmid = pmid;

    auto sentences = split_sentences(doc_text);

    std::vector<TextBound> entities;
    if (gold_entities) {
        entities = *gold_entities;
    } else {
        std::size_t next_entity = 0;
        for (const Span& sent : sentences)
            for (TextBound tb : match_entities(doc_text, sent, gazetteer)) {
                tb.id = "T" + std::to_string(next_entity++);
                entities.push_back(std::move(tb));
            }
    }

    std::vector<std::vector<TextBound>> triggers_by_sentence;
    std::size_t next_trigger = 1000;
    for (const auto& ent : entities)
        if (!ent.id.empty() && ent.id[0] == 'T')
            next_trigger = std::max(
                next_trigger,
                static_cast<std::size_t>(detail::id_number(ent.id)) + 1);
    for (const Span& sent : sentences) {
        auto triggers = match_triggers(doc_text, sent, lexicon);
        for (auto& tb : triggers) tb.id = "T" + std::to_string(next_trigger++);
        triggers_by_sentence.push_back(std::move(triggers));
    }

    bool any_adjacent = std::any_of(patterns.begin(), patterns.end(),
                                    [](const auto& p) { return p.adjacent_scope; });

    auto entities_in = [&](Span window) {
        std::vector<TextBound> subset;
        for (const auto& ent : entities)
            if (ent.start >= window.start && ent.end <= window.end)
                subset.push_back(ent);
        return subset;
    };

    std::size_t next_event = 1;
    std::vector<BioEvent> all_events;
    std::set<std::string> used_triggers;
    for (std::size_t si = 0; si < sentences.size(); ++si) {
        const auto& triggers = triggers_by_sentence[si];
        if (triggers.empty()) continue;

        Span sent = sentences[si];
        Span adj = si + 1 < sentences.size()
                       ? Span{sent.start, sentences[si + 1].end}
                       : sent;

        for (const auto& trigger : triggers) {
            std::vector<TextBound> one{trigger};
            std::vector<BioEvent> events;
            // Sentence-scoped patterns first; adjacent-scoped patterns see the
            // two-sentence window. Pattern list order decides precedence
            // within each scope pass.
            std::vector<ArgPattern> sent_pats, adj_pats;
            for (const auto& p : patterns)
                (p.adjacent_scope ? adj_pats : sent_pats).push_back(p);

            if (any_adjacent && !adj_pats.empty()) {
                events = apply_patterns(doc_text, adj, one, entities_in(adj),
                                        adj_pats, next_event);
            }
            if (events.empty()) {
                events = apply_patterns(doc_text, sent, one, entities_in(sent),
                                        sent_pats, next_event);
            }
            for (auto& ev : events) {
                used_triggers.insert(ev.trigger);
                all_events.push_back(std::move(ev));
            }
        }
    }

    for (const auto& ent : entities) out.textbounds.emplace(ent.id, ent);
    for (const auto& triggers : triggers_by_sentence)
        for (const auto& tb : triggers)
            if (used_triggers.count(tb.id)) out.textbounds.emplace(tb.id, tb);
    for (auto& ev : all_events) {
        std::string id = ev.id;
        out.events.emplace(id, std::move(ev));
    }
    return out;
}

/// The shipped default pattern set: the verb-theme, binding-pair and
/// cause-theme families.
inline std::string default_patterns_text() {
    return
        "binding-pair: ENTITY GAP(2) TRIGGER(Binding) GAP(12) ENTITY => "
        "Theme=1,Theme2=5 ; mirror scope=adj\n"
        "binding-back: ENTITY GAP(6) TRIGGER(Binding) => Theme=1\n"
        "binding-forward: TRIGGER(Binding) GAP(2) ENTITY => Theme=3\n"
        "phospho-theme: TRIGGER(Phosphorylation) ENTITY => Theme=2 ; anywhere\n"
        "cause-of: TRIGGER(Positive_regulation) GAP(0) LITERAL(of) GAP(0) "
        "ENTITY => Cause=5,Theme=5\n";
}

}  // namespace bioevent
