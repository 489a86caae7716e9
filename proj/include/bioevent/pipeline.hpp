#pragma once

// Pipeline orchestration: ingest -> extract (or gold-annotation load) ->
// graph -> rank -> subnet -> export. Every stage's output is written so
// stages can also be run individually from the CLI.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bioevent/exports.hpp"
#include "bioevent/extract.hpp"
#include "bioevent/medline.hpp"
#include "bioevent/netgraph.hpp"
#include "bioevent/rank.hpp"
#include "bioevent/standoff.hpp"

namespace bioevent {

inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineConfig {
    std::vector<std::string> medline_paths;
    std::vector<std::string> ann_paths;  // gold annotations, optional
    std::string lexicon_path;
    std::string gazetteer_path;
    std::string patterns_path;
    RankParams rank_params;
    RankAlgorithm algorithm = RankAlgorithm::Weighted;
    std::size_t top_k = 20;
    long long min_weight = 1;
    bool collapse_mirrors = false;
    ValidationMode validation = ValidationMode::Lenient;
    bool stamp = false;  // include wall-clock timestamps in the manifest
    std::string out_dir = "out";
};

struct RunManifest {
    std::string version = kToolVersion;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_digests;
    std::map<std::string, long long> counts;
    std::string started_at, finished_at;  // empty unless stamping requested

    std::string to_text() const {
        std::ostringstream out;
        out << "version=" << version << '\n';
        for (const auto& [k, v] : config) out << "config." << k << '=' << v << '\n';
        for (const auto& [k, v] : input_digests)
            out << "digest." << k << '=' << v << '\n';
        for (const auto& [k, v] : counts) out << "count." << k << '=' << v << '\n';
        if (!started_at.empty()) out << "started_at=" << started_at << '\n';
        if (!finished_at.empty()) out << "finished_at=" << finished_at << '\n';
        return out.str();
    }
};

namespace io {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path,
                       std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace io

/// Document text used for extraction offsets: title, one space, abstract.
inline std::string document_text(const MedlineRecord& rec) {
    if (rec.title.empty()) return rec.abstract;
    if (rec.abstract.empty()) return rec.title;
    return rec.title + " " + rec.abstract;
}

struct PipelineResources {
    TriggerLexicon lexicon;
    Gazetteer gazetteer;
    std::vector<ArgPattern> patterns;
};

inline PipelineResources load_resources(const PipelineConfig& config) {
    PipelineResources res;
    if (!config.lexicon_path.empty())
        res.lexicon = TriggerLexicon::load(io::read_file(config.lexicon_path));
    if (!config.gazetteer_path.empty())
        res.gazetteer = Gazetteer::load(io::read_file(config.gazetteer_path));
    res.patterns = load_patterns(config.patterns_path.empty()
                                     ? default_patterns_text()
                                     : io::read_file(config.patterns_path));
    return res;
}

/// Ingest stage: parse + first-wins dedup over the MEDLINE inputs, batch
/// label = file path. Merge order is the configured path order; records
/// within a batch keep file order.
inline Corpus ingest(const PipelineConfig& config) {
    std::vector<std::pair<std::string, std::vector<MedlineRecord>>> batches;
    for (const auto& path : config.medline_paths) {
        auto parsed = parse_medline(io::read_file(path));
        batches.emplace_back(path, std::move(parsed.records));
    }
    return dedup(batches);
}

/// Extraction stage over a corpus. Gold annotation files, when configured,
/// replace extraction for the PMIDs they cover; remaining documents go
/// through the lexicon/pattern extractor. Output is sorted by PMID.
inline std::vector<std::pair<long long, AnnotationSet>> extract_corpus(
    const Corpus& corpus, const PipelineResources& res,
    const std::vector<std::string>& ann_paths) {
    std::map<long long, AnnotationSet> gold;
    for (const auto& path : ann_paths)
        for (auto& [pmid, set] : parse_standoff_stream(io::read_file(path)))
            gold.emplace(pmid, std::move(set));

    std::map<long long, AnnotationSet> by_pmid;
    for (const auto& rec : corpus.records) {
        auto it = gold.find(rec.pmid);
        if (it != gold.end()) {
            std::vector<TextBound> entities;
            for (const auto& [id, tb] : it->second.textbounds)
                if (tb.kind == "Protein") entities.push_back(tb);
            by_pmid[rec.pmid] =
                extract_document(rec.pmid, document_text(rec), res.lexicon,
                                 res.gazetteer, res.patterns, &entities);
        } else {
            by_pmid[rec.pmid] =
                extract_document(rec.pmid, document_text(rec), res.lexicon,
                                 res.gazetteer, res.patterns);
        }
    }
    // Gold sets without a matching corpus record are used as-is.
    for (auto& [pmid, set] : gold)
        if (!by_pmid.count(pmid)) by_pmid[pmid] = std::move(set);

    return {by_pmid.begin(), by_pmid.end()};
}

struct PipelineOutputs {
    Corpus corpus;
    std::vector<std::pair<long long, AnnotationSet>> events;
    EventGraph graph;
    GraphStats stats;
    RankResult ranks;
    EventGraph subnet;
    RunManifest manifest;
};

namespace pipeline_detail {

inline std::string now_iso8601() {
    auto t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace pipeline_detail

/// Runs every stage and writes all artifacts under config.out_dir. Any
/// stage failure removes files written during this invocation.
inline PipelineOutputs run_pipeline(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    PipelineOutputs out;
    RunManifest& manifest = out.manifest;
    if (config.stamp) manifest.started_at = pipeline_detail::now_iso8601();

    fs::path dir(config.out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto emit = [&](const char* name, std::string_view content) {
        fs::path p = dir / name;
        io::write_file(p, content);
        written.push_back(p);
    };

    try {
        manifest.config["damping"] = detail::format_score(config.rank_params.damping);
        manifest.config["tol"] = detail::format_score(config.rank_params.tol);
        manifest.config["max_iters"] = std::to_string(config.rank_params.max_iters);
        manifest.config["sum_normalize"] =
            config.rank_params.sum_normalize ? "true" : "false";
        manifest.config["degree_mode"] =
            config.rank_params.degree_mode == DegreeMode::Weighted ? "weighted"
                                                                   : "unweighted";
        manifest.config["algorithm"] =
            config.algorithm == RankAlgorithm::Weighted ? "weighted" : "simple";
        manifest.config["top_k"] = std::to_string(config.top_k);
        manifest.config["min_weight"] = std::to_string(config.min_weight);
        manifest.config["collapse_mirrors"] =
            config.collapse_mirrors ? "true" : "false";

        for (const auto& path : config.medline_paths)
            manifest.input_digests[path] = content_digest(io::read_file(path));
        for (const auto& path : config.ann_paths)
            manifest.input_digests[path] = content_digest(io::read_file(path));

        PipelineResources res = load_resources(config);

        // ingest
        out.corpus = ingest(config);
        manifest.counts["records"] =
            static_cast<long long>(out.corpus.records.size());
        emit("corpus.medline", serialize_medline(out.corpus.records));
        emit("dedup_report.csv", dedup_report_csv(out.corpus));

        // extract / gold load
        out.events = extract_corpus(out.corpus, res, config.ann_paths);
        long long event_count = 0;
        for (const auto& [pmid, set] : out.events) {
            auto report = validate(set, std::nullopt, config.validation);
            if (!report.ok(config.validation))
                throw std::runtime_error(
                    "annotation validation failed for pmid " +
                    std::to_string(pmid) + ": " +
                    report.findings.front().message);
            event_count += static_cast<long long>(set.events.size());
        }
        manifest.counts["events"] = event_count;
        emit("events.ann", serialize_standoff_stream(out.events));

        // graph
        BuildOptions build_opts;
        build_opts.collapse_mirrors = config.collapse_mirrors;
        auto build = build_graph(out.events, res.gazetteer, build_opts);
        out.graph = std::move(build.graph);
        out.stats = graph_stats(out.graph);
        manifest.counts["nodes"] = static_cast<long long>(out.stats.node_count);
        manifest.counts["edges"] = static_cast<long long>(out.stats.edge_count);
        emit("edges.tsv", out.graph.to_edge_list());
        emit("histogram.csv", histogram_csv(out.stats));
        emit("network_stats.csv", network_stats_csv(out.stats));

        // rank
        if (!out.graph.nodes().empty()) {
            out.ranks = rank_graph(out.graph, config.rank_params,
                                   config.algorithm);
        }
        emit("rank.csv", rank_report_csv(out.ranks));
        emit("rank_top.csv", top_rank_csv(out.ranks, config.top_k));

        // subnet: closed neighborhood of the top-k ranked nodes
        if (!out.graph.nodes().empty()) {
            std::set<Node> seeds;
            for (std::size_t i = 0;
                 i < std::min(config.top_k, out.ranks.ranking.size()); ++i)
                seeds.insert(out.ranks.ranking[i].node);
            out.subnet = induced_subnetwork(out.graph, seeds, config.min_weight);
        }
        emit("subnet_edges.tsv", out.subnet.to_edge_list());
        emit("clusters.csv", clusters_csv(clusters(out.graph)));

        // export
        emit("graph.gexf", write_gexf(out.graph, out.ranks));

        if (config.stamp) manifest.finished_at = pipeline_detail::now_iso8601();
        emit("manifest.txt", manifest.to_text());
    } catch (const std::exception& e) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw std::runtime_error(std::string("pipeline failed: ") + e.what());
    }
    return out;
}

}  // namespace bioevent
