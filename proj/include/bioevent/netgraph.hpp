#pragma once

// Undirected weighted heterogeneous event network: gene/protein nodes
// attach to event-type hub nodes with frequency-weighted edges.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bioevent/extract.hpp"
#include "bioevent/standoff.hpp"

namespace bioevent {

enum class NodeKind { GeneProtein, EventHub };

inline const char* to_string(NodeKind k) {
    return k == NodeKind::GeneProtein ? "GeneProtein" : "EventHub";
}

struct Node {
    std::string key;  // canonical symbol, or event type for hubs
    NodeKind kind = NodeKind::GeneProtein;

    auto operator<=>(const Node&) const = default;
};

class EventGraph {
public:
    using Edge = std::pair<Node, Node>;  // stored (GeneProtein, EventHub)

    void add_edge(const Node& a, const Node& b, long long weight = 1) {
        if (a == b) throw std::invalid_argument("self-loop on " + a.key);
        if (weight <= 0) throw std::invalid_argument("non-positive edge weight");
        nodes_.insert(a);
        nodes_.insert(b);
        Edge e = a < b ? Edge{a, b} : Edge{b, a};
        edges_[e] += weight;
    }

    void add_node(const Node& n) { nodes_.insert(n); }

    const std::set<Node>& nodes() const { return nodes_; }
    const std::map<Edge, long long>& edges() const { return edges_; }

    long long weight(const Node& a, const Node& b) const {
        Edge e = a < b ? Edge{a, b} : Edge{b, a};
        auto it = edges_.find(e);
        return it == edges_.end() ? 0 : it->second;
    }

    bool is_bipartite() const {
        for (const auto& [e, _] : edges_)
            if (e.first.kind == e.second.kind) return false;
        return true;
    }

    std::map<Node, long long> weighted_degree() const {
        std::map<Node, long long> deg;
        for (const auto& n : nodes_) deg[n] = 0;
        for (const auto& [e, w] : edges_) {
            deg[e.first] += w;
            deg[e.second] += w;
        }
        return deg;
    }

    std::map<Node, std::vector<std::pair<Node, long long>>> adjacency() const {
        std::map<Node, std::vector<std::pair<Node, long long>>> adj;
        for (const auto& n : nodes_) adj[n];
        for (const auto& [e, w] : edges_) {
            adj[e.first].emplace_back(e.second, w);
            adj[e.second].emplace_back(e.first, w);
        }
        return adj;
    }

    /// Edge-list text: `protein<TAB>event_type<TAB>weight`, sorted. Both
    /// endpoints of every exported edge must respect the bipartite layout.
    std::string to_edge_list() const {
        std::ostringstream out;
        for (const auto& [e, w] : edges_) {
            const Node& protein =
                e.first.kind == NodeKind::GeneProtein ? e.first : e.second;
            const Node& hub =
                e.first.kind == NodeKind::EventHub ? e.first : e.second;
            if (protein.kind != NodeKind::GeneProtein ||
                hub.kind != NodeKind::EventHub)
                throw std::runtime_error("non-bipartite edge in export: " +
                                         e.first.key + " -- " + e.second.key);
            out << protein.key << '\t' << hub.key << '\t' << w << '\n';
        }
        return out.str();
    }

    static EventGraph from_edge_list(std::string_view text) {
        EventGraph g;
        std::size_t pos = 0, line_no = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line(text.substr(
                pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream in(line);
            std::string protein, hub, weight;
            if (!std::getline(in, protein, '\t') ||
                !std::getline(in, hub, '\t') || !std::getline(in, weight))
                throw ParseError("bad edge-list line", line_no);
            g.add_edge({protein, NodeKind::GeneProtein},
                       {hub, NodeKind::EventHub}, std::stoll(weight));
        }
        return g;
    }

private:
    std::set<Node> nodes_;
    std::map<Edge, long long> edges_;
};

struct BuildOptions {
    bool collapse_mirrors = false;
};

struct BuildResult {
    EventGraph graph;
    std::vector<std::string> warnings;
};

namespace graph_detail {

// Canonical symbol for a T-target: gazetteer lookup on the surface, raw
// mention as fallback.
inline std::string canonical_protein(const TextBound& tb,
                                     const Gazetteer& gazetteer,
                                     std::vector<std::string>& warnings) {
    std::string mention = tb.surface.value_or("");
    if (mention.empty()) mention = tb.id;
    if (auto sym = gazetteer.canonical(mention)) return *sym;
    warnings.push_back("no canonical symbol for mention '" + mention +
                       "', using raw form");
    return mention;
}

// Distinct canonical proteins among an event's Theme/Theme2/Cause arguments;
// nested E-targets are flattened to the referenced event's proteins.
inline void collect_proteins(const AnnotationSet& set, const BioEvent& ev,
                             const Gazetteer& gazetteer,
                             std::set<std::string>& visited_events,
                             std::set<std::string>& proteins,
                             std::vector<std::string>& warnings) {
    if (!visited_events.insert(ev.id).second) return;
    for (const auto& arg : ev.args) {
        if (arg.target[0] == 'T') {
            auto it = set.textbounds.find(arg.target);
            if (it != set.textbounds.end() && it->second.kind == "Protein")
                proteins.insert(
                    canonical_protein(it->second, gazetteer, warnings));
        } else {
            auto it = set.events.find(arg.target);
            if (it != set.events.end())
                collect_proteins(set, it->second, gazetteer, visited_events,
                                 proteins, warnings);
        }
    }
}

// Key identifying an event up to Theme/Theme2 mirroring.
inline std::string mirror_key(const BioEvent& ev) {
    std::vector<std::string> themes;
    std::string rest;
    for (const auto& arg : ev.args) {
        if (arg.role == "Theme" || arg.role == "Theme2")
            themes.push_back(arg.target);
        else
            rest += arg.role + "=" + arg.target + ";";
    }
    std::sort(themes.begin(), themes.end());
    std::string key = ev.event_type + "|" + ev.trigger + "|" + rest;
    for (const auto& t : themes) key += t + ",";
    return key;
}

}  // namespace graph_detail

/// One weight increment per (event instance, distinct canonical protein).
/// With collapse_mirrors, Theme/Theme2-swapped duplicates of the same
/// trigger count once.
inline BuildResult build_graph(
    const std::vector<std::pair<long long, AnnotationSet>>& corpus_events,
    const Gazetteer& gazetteer, const BuildOptions& options = {}) {
    BuildResult result;
    for (const auto& [pmid, set] : corpus_events) {
        std::set<std::string> seen_mirror_keys;
        for (const auto& [id, ev] : set.events) {
            if (options.collapse_mirrors &&
                !seen_mirror_keys.insert(graph_detail::mirror_key(ev)).second)
                continue;
            std::set<std::string> visited, proteins;
            graph_detail::collect_proteins(set, ev, gazetteer, visited, proteins,
                                           result.warnings);
            Node hub{ev.event_type, NodeKind::EventHub};
            for (const auto& protein : proteins)
                result.graph.add_edge({protein, NodeKind::GeneProtein}, hub, 1);
        }
    }
    return result;
}

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::map<Node, long long> weighted_degree;
    std::map<std::string, long long> event_type_histogram;
};

/// Histogram counts are hub weighted degrees: one count per contributing
/// (event instance, protein) increment.
inline GraphStats graph_stats(const EventGraph& g) {
    GraphStats stats;
    stats.node_count = g.nodes().size();
    stats.edge_count = g.edges().size();
    stats.weighted_degree = g.weighted_degree();
    for (const auto& [node, deg] : stats.weighted_degree)
        if (node.kind == NodeKind::EventHub)
            stats.event_type_histogram[node.key] = deg;
    return stats;
}

/// Closed neighborhood of the seeds, then edges below min_weight and any
/// resulting isolated nodes are dropped.
inline EventGraph induced_subnetwork(const EventGraph& g,
                                     const std::set<Node>& seeds,
                                     long long min_weight = 1) {
    for (const auto& s : seeds)
        if (!g.nodes().count(s))
            throw std::invalid_argument("unknown seed node: " + s.key);

    std::set<Node> keep = seeds;
    for (const auto& [e, _] : g.edges()) {
        if (seeds.count(e.first)) keep.insert(e.second);
        if (seeds.count(e.second)) keep.insert(e.first);
    }
    EventGraph sub;
    for (const auto& [e, w] : g.edges())
        if (w >= min_weight && keep.count(e.first) && keep.count(e.second))
            sub.add_edge(e.first, e.second, w);
    return sub;
}

/// Connected components, largest first (ties by smallest member), members
/// in node order.
inline std::vector<std::vector<Node>> clusters(const EventGraph& g) {
    auto adj = g.adjacency();
    std::set<Node> unvisited(g.nodes().begin(), g.nodes().end());
    std::vector<std::vector<Node>> components;
    while (!unvisited.empty()) {
        std::vector<Node> comp;
        std::vector<Node> stack{*unvisited.begin()};
        unvisited.erase(unvisited.begin());
        while (!stack.empty()) {
            Node n = stack.back();
            stack.pop_back();
            comp.push_back(n);
            for (const auto& [m, _] : adj[n]) {
                auto it = unvisited.find(m);
                if (it != unvisited.end()) {
                    unvisited.erase(it);
                    stack.push_back(m);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    std::stable_sort(components.begin(), components.end(),
                     [](const auto& a, const auto& b) {
                         if (a.size() != b.size()) return a.size() > b.size();
                         return a.front() < b.front();
                     });
    return components;
}

}  // namespace bioevent
