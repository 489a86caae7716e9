#pragma once

// Node ranking over the event network: classic normalized PageRank,
// weighted PageRank with in/out edge-weight factors, weighted degrees and
// min-max normalization. Each undirected edge acts as a symmetric arc
// pair, so weighted in- and out-degree coincide.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bioevent/netgraph.hpp"

namespace bioevent {

enum class DegreeMode { Weighted, Unweighted };

struct RankParams {
    double damping = 0.85;
    double tol = 1e-10;
    std::size_t max_iters = 1000;
    bool sum_normalize = true;
    DegreeMode degree_mode = DegreeMode::Weighted;

    void check() const {
        if (!(damping > 0.0 && damping < 1.0))
            throw std::invalid_argument("damping must be in (0, 1)");
        if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
        if (max_iters < 1)
            throw std::invalid_argument("max_iters must be at least 1");
    }
};

/// Index-based view of an undirected weighted graph; every edge expands to
/// a symmetric arc pair carrying the edge weight.
struct WeightedAdjacency {
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbors;

    std::size_t size() const { return neighbors.size(); }

    void add_edge(std::size_t u, std::size_t v, double w) {
        std::size_t need = std::max(u, v) + 1;
        if (neighbors.size() < need) neighbors.resize(need);
        neighbors[u].emplace_back(v, w);
        neighbors[v].emplace_back(u, w);
    }

    std::vector<double> weighted_degrees() const {
        std::vector<double> deg(size(), 0.0);
        for (std::size_t u = 0; u < size(); ++u)
            for (const auto& [v, w] : neighbors[u]) deg[u] += w;
        return deg;
    }

    std::vector<double> arc_counts() const {
        std::vector<double> deg(size(), 0.0);
        for (std::size_t u = 0; u < size(); ++u)
            deg[u] = static_cast<double>(neighbors[u].size());
        return deg;
    }
};

struct RankVector {
    std::vector<double> scores;      // sum-normalized when requested
    std::vector<double> raw_scores;  // pre-normalization fixed point
    std::size_t iterations = 0;
    bool converged = false;
    double residual = 0.0;  // L1 change at termination
};

namespace rank_detail {

inline double l1_diff(const std::vector<double>& a,
                      const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

inline void sum_normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    if (s > 0.0)
        for (double& v : x) v /= s;
}

}  // namespace rank_detail

/// Fixed point of pr(u) = c * sum_{v in b(u)} pr(v)/N_v, iterated from the
/// uniform vector with per-sweep renormalization. The update is averaged
/// with the previous iterate so the iteration settles on bipartite graphs,
/// which would otherwise oscillate with period two; the fixed point is
/// unchanged.
inline RankVector pagerank_simple(const WeightedAdjacency& g,
                                  const RankParams& params = {}) {
    params.check();
    std::size_t n = g.size();
    if (n == 0) throw std::invalid_argument("empty graph");

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    RankVector result;

    for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            if (g.neighbors[v].empty()) continue;
            double share = x[v] / static_cast<double>(g.neighbors[v].size());
            for (const auto& [u, w] : g.neighbors[v]) next[u] += share;
        }
        for (std::size_t u = 0; u < n; ++u) next[u] = 0.5 * (x[u] + next[u]);
        rank_detail::sum_normalize(next);

        result.iterations = iter;
        result.residual = rank_detail::l1_diff(x, next);
        x.swap(next);
        if (result.residual < params.tol) {
            result.converged = true;
            break;
        }
    }

    result.raw_scores = x;
    rank_detail::sum_normalize(x);
    result.scores = params.sum_normalize ? x : result.raw_scores;
    return result;
}

/// Fixed point of
///   pr(u) = (1-d) + d * sum_{v in b(u)} pr(v) * Win(v,u) * Wout(v,u)
/// where Win(v,u) = I_u / sum_{p in Out(v)} I_p and Wout analogously over
/// O; for a symmetric arc expansion I and O are both the (weighted or
/// unweighted) node degree. Isolated nodes settle at (1-d). The raw fixed
/// point is sum-normalized when requested.
inline RankVector pagerank_weighted(const WeightedAdjacency& g,
                                    const RankParams& params = {}) {
    params.check();
    std::size_t n = g.size();
    if (n == 0) throw std::invalid_argument("empty graph");

    std::vector<double> deg = params.degree_mode == DegreeMode::Weighted
                                  ? g.weighted_degrees()
                                  : g.arc_counts();

    // coeff[u] lists (v, Win*Wout) for v in b(u).
    std::vector<std::vector<std::pair<std::size_t, double>>> coeff(n);
    for (std::size_t v = 0; v < n; ++v) {
        double denom = 0.0;
        for (const auto& [p, w] : g.neighbors[v]) denom += deg[p];
        if (denom <= 0.0) continue;
        for (const auto& [u, w] : g.neighbors[v]) {
            double win = deg[u] / denom;
            coeff[u].emplace_back(v, win * win);
        }
    }

    double d = params.damping;
    std::vector<double> x(n, 1.0);
    std::vector<double> next(n);
    RankVector result;

    for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
        for (std::size_t u = 0; u < n; ++u) {
            double acc = 0.0;
            for (const auto& [v, c] : coeff[u]) acc += x[v] * c;
            next[u] = (1.0 - d) + d * acc;
        }
        result.iterations = iter;
        result.residual = rank_detail::l1_diff(x, next);
        x.swap(next);
        if (result.residual < params.tol) {
            result.converged = true;
            break;
        }
    }

    result.raw_scores = x;
    rank_detail::sum_normalize(x);
    result.scores = params.sum_normalize ? x : result.raw_scores;
    return result;
}

/// x -> (x - min) / (max - min); all zero when the scores are constant.
inline std::vector<double> minmax_normalize(const std::vector<double>& scores) {
    if (scores.empty())
        throw std::invalid_argument("minmax_normalize on empty scores");
    auto [mn_it, mx_it] = std::minmax_element(scores.begin(), scores.end());
    double mn = *mn_it, mx = *mx_it;
    std::vector<double> out(scores.size(), 0.0);
    if (mx > mn)
        for (std::size_t i = 0; i < scores.size(); ++i)
            out[i] = (scores[i] - mn) / (mx - mn);
    return out;
}

// ---------------------------------------------------------------------------
// EventGraph front end

struct NodeRank {
    Node node;
    double pagerank = 0.0;
    double weighted_in_degree = 0.0;
    double weighted_out_degree = 0.0;
    double minmax_rank = 0.0;
};

struct RankResult {
    std::vector<NodeRank> ranking;  // descending score, then ascending key
    std::size_t iterations = 0;
    bool converged = false;
    double residual = 0.0;
};

enum class RankAlgorithm { Simple, Weighted };

inline std::pair<WeightedAdjacency, std::vector<Node>> to_adjacency(
    const EventGraph& g) {
    std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
    std::map<Node, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    WeightedAdjacency adj;
    adj.neighbors.resize(nodes.size());
    for (const auto& [e, w] : g.edges())
        adj.add_edge(index[e.first], index[e.second],
                     static_cast<double>(w));
    return {std::move(adj), std::move(nodes)};
}

inline RankResult rank_graph(const EventGraph& g, const RankParams& params = {},
                             RankAlgorithm algorithm = RankAlgorithm::Weighted) {
    auto [adj, nodes] = to_adjacency(g);
    RankVector rv = algorithm == RankAlgorithm::Weighted
                        ? pagerank_weighted(adj, params)
                        : pagerank_simple(adj, params);
    auto deg = adj.weighted_degrees();
    auto minmax = minmax_normalize(rv.scores);

    RankResult result;
    result.iterations = rv.iterations;
    result.converged = rv.converged;
    result.residual = rv.residual;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        NodeRank nr;
        nr.node = nodes[i];
        nr.pagerank = rv.scores[i];
        nr.weighted_in_degree = deg[i];
        nr.weighted_out_degree = deg[i];
        nr.minmax_rank = minmax[i];
        result.ranking.push_back(std::move(nr));
    }
    std::sort(result.ranking.begin(), result.ranking.end(),
              [](const NodeRank& a, const NodeRank& b) {
                  if (a.pagerank != b.pagerank) return a.pagerank > b.pagerank;
                  return a.node < b.node;
              });
    return result;
}

inline std::map<Node, std::pair<double, double>> weighted_degrees(
    const EventGraph& g) {
    std::map<Node, std::pair<double, double>> out;
    for (const auto& [node, deg] : g.weighted_degree())
        out[node] = {static_cast<double>(deg), static_cast<double>(deg)};
    return out;
}

}  // namespace bioevent
