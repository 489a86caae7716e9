#pragma once

// Gephi-compatible GEXF output and the tabular report files.

#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bioevent/netgraph.hpp"
#include "bioevent/rank.hpp"

namespace bioevent {

namespace xml {

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace xml

namespace detail {

inline std::string format_score(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

}  // namespace detail

/// GEXF 1.2draft document: undirected edge default, node attributes
/// kind/pagerank/minmax_rank, edge weights. `ranks` must cover every node.
inline std::string write_gexf(const EventGraph& g, const RankResult& ranks) {
    std::map<Node, const NodeRank*> by_node;
    for (const auto& nr : ranks.ranking) by_node[nr.node] = &nr;
    for (const auto& n : g.nodes())
        if (!by_node.count(n))
            throw std::invalid_argument("rank result missing node " + n.key);

    std::map<Node, std::size_t> ids;
    for (const auto& n : g.nodes()) ids.emplace(n, ids.size());

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
        << "    <attributes class=\"node\">\n"
        << "      <attribute id=\"0\" title=\"kind\" type=\"string\"/>\n"
        << "      <attribute id=\"1\" title=\"pagerank\" type=\"double\"/>\n"
        << "      <attribute id=\"2\" title=\"minmax_rank\" type=\"double\"/>\n"
        << "    </attributes>\n"
        << "    <nodes>\n";
    for (const auto& [n, id] : ids) {
        const NodeRank& nr = *by_node.at(n);
        out << "      <node id=\"" << id << "\" label=\"" << xml::escape(n.key)
            << "\">\n"
            << "        <attvalues>\n"
            << "          <attvalue for=\"0\" value=\"" << to_string(n.kind)
            << "\"/>\n"
            << "          <attvalue for=\"1\" value=\""
            << detail::format_score(nr.pagerank) << "\"/>\n"
            << "          <attvalue for=\"2\" value=\""
            << detail::format_score(nr.minmax_rank) << "\"/>\n"
            << "        </attvalues>\n"
            << "      </node>\n";
    }
    out << "    </nodes>\n"
        << "    <edges>\n";
    std::size_t edge_id = 0;
    for (const auto& [e, w] : g.edges()) {
        out << "      <edge id=\"" << edge_id++ << "\" source=\""
            << ids.at(e.first) << "\" target=\"" << ids.at(e.second)
            << "\" weight=\"" << w << "\"/>\n";
    }
    out << "    </edges>\n"
        << "  </graph>\n"
        << "</gexf>\n";
    return out.str();
}

/// `node,kind,pagerank,weighted_in_degree,weighted_out_degree,minmax_rank`
/// in tie-break order (descending score, ascending key).
inline std::string rank_report_csv(const RankResult& ranks) {
    std::ostringstream out;
    out << "node,kind,pagerank,weighted_in_degree,weighted_out_degree,"
           "minmax_rank\n";
    for (const auto& nr : ranks.ranking)
        out << nr.node.key << ',' << to_string(nr.node.kind) << ','
            << detail::format_score(nr.pagerank) << ','
            << detail::format_score(nr.weighted_in_degree) << ','
            << detail::format_score(nr.weighted_out_degree) << ','
            << detail::format_score(nr.minmax_rank) << '\n';
    return out.str();
}

/// Event-type frequency table, most frequent first.
inline std::string histogram_csv(const GraphStats& stats) {
    std::vector<std::pair<std::string, long long>> rows(
        stats.event_type_histogram.begin(), stats.event_type_histogram.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream out;
    out << "event_type,count\n";
    for (const auto& [type, count] : rows) out << type << ',' << count << '\n';
    return out.str();
}

inline std::string network_stats_csv(const GraphStats& stats) {
    long long total_weight = 0;
    for (const auto& [_, deg] : stats.weighted_degree) total_weight += deg;
    std::ostringstream out;
    out << "metric,value\n"
        << "nodes," << stats.node_count << '\n'
        << "edges," << stats.edge_count << '\n'
        << "total_edge_weight," << total_weight / 2 << '\n';
    return out.str();
}

inline std::string top_rank_csv(const RankResult& ranks, std::size_t top_k) {
    std::ostringstream out;
    out << "rank,node,kind,pagerank,minmax_rank\n";
    std::size_t limit = std::min(top_k, ranks.ranking.size());
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& nr = ranks.ranking[i];
        out << i + 1 << ',' << nr.node.key << ',' << to_string(nr.node.kind)
            << ',' << detail::format_score(nr.pagerank) << ','
            << detail::format_score(nr.minmax_rank) << '\n';
    }
    return out.str();
}

inline std::string clusters_csv(const std::vector<std::vector<Node>>& parts) {
    std::ostringstream out;
    out << "cluster,node,kind\n";
    for (std::size_t c = 0; c < parts.size(); ++c)
        for (const auto& n : parts[c])
            out << c + 1 << ',' << n.key << ',' << to_string(n.kind) << '\n';
    return out.str();
}

/// Stable content digest (FNV-1a 64) used by the run manifest.
inline std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace bioevent
