// bioevent: corpus-to-biomarker pipeline CLI.
//
// Subcommands mirror the pipeline stages (fetch, ingest, extract, graph,
// rank, subnet, export) plus `run` for the whole chain. Options may also
// come from a flat key=value config file; command-line flags override it.

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bioevent/eutils.hpp"
#include "bioevent/exports.hpp"
#include "bioevent/pipeline.hpp"

namespace fs = std::filesystem;
using namespace bioevent;

namespace {

void add_rank_options(CLI::App* cmd, PipelineConfig& config,
                      std::string& degree_mode, std::string& algorithm) {
    cmd->add_option("--damping", config.rank_params.damping,
                    "Damping factor d in (0,1)")
        ->capture_default_str();
    cmd->add_option("--tol", config.rank_params.tol, "L1 convergence threshold")
        ->capture_default_str();
    cmd->add_option("--max-iters", config.rank_params.max_iters,
                    "Iteration limit")
        ->capture_default_str();
    cmd->add_flag("--sum-normalize,!--no-sum-normalize",
                  config.rank_params.sum_normalize,
                  "Rescale the final vector to sum 1");
    cmd->add_option("--degree-mode", degree_mode,
                    "Degrees feeding the W factors: weighted|unweighted")
        ->check(CLI::IsMember({"weighted", "unweighted"}))
        ->capture_default_str();
    cmd->add_option("--algorithm", algorithm,
                    "Ranking variant: weighted|simple")
        ->check(CLI::IsMember({"weighted", "simple"}))
        ->capture_default_str();
}

void add_resource_options(CLI::App* cmd, PipelineConfig& config) {
    cmd->add_option("--lexicon", config.lexicon_path, "Trigger lexicon TSV");
    cmd->add_option("--gazetteer", config.gazetteer_path, "Gazetteer TSV");
    cmd->add_option("--patterns", config.patterns_path,
                    "Argument pattern file (built-in set when omitted)");
}

void apply_string_enums(PipelineConfig& config, const std::string& degree_mode,
                        const std::string& algorithm) {
    config.rank_params.degree_mode = degree_mode == "unweighted"
                                         ? DegreeMode::Unweighted
                                         : DegreeMode::Weighted;
    config.algorithm = algorithm == "simple" ? RankAlgorithm::Simple
                                             : RankAlgorithm::Weighted;
}

EventGraph load_graph(const std::string& edges_path) {
    return EventGraph::from_edge_list(io::read_file(edges_path));
}

void write_out(const fs::path& dir, const char* name,
               std::string_view content) {
    fs::create_directories(dir);
    io::write_file(dir / name, content);
    std::cout << "wrote " << (dir / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biomolecular event network pipeline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file");
    app.allow_config_extras(true);

    PipelineConfig config;
    std::string degree_mode = "weighted";
    std::string algorithm = "weighted";
    std::string edges_path;
    std::string query, offline_path, out_file = "fetch.medline";
    std::size_t max_records = 10000;
    double rate_limit = 3.0;

    auto* fetch = app.add_subcommand("fetch", "Download MEDLINE records");
    fetch->add_option("--query", query, "PubMed query term");
    fetch->add_option("--max-records", max_records, "Record cap")
        ->capture_default_str();
    fetch->add_option("--rate-limit", rate_limit, "Requests per second")
        ->capture_default_str();
    fetch->add_option("--offline", offline_path,
                      "Pass a saved MEDLINE export through unchanged");
    fetch->add_option("--out-file", out_file, "Output path")
        ->capture_default_str();

    auto* ingest_cmd = app.add_subcommand("ingest", "Parse and dedup MEDLINE");
    auto* extract_cmd =
        app.add_subcommand("extract", "Extract events from the corpus");
    auto* graph_cmd = app.add_subcommand("graph", "Build the event network");
    auto* rank_cmd = app.add_subcommand("rank", "Rank nodes");
    auto* subnet_cmd = app.add_subcommand("subnet", "Extract a subnetwork");
    auto* export_cmd = app.add_subcommand("export", "Write GEXF and reports");
    auto* run_cmd = app.add_subcommand("run", "Run every stage");

    for (CLI::App* cmd : {ingest_cmd, extract_cmd, run_cmd})
        cmd->add_option("--medline", config.medline_paths,
                        "MEDLINE input file(s)");
    for (CLI::App* cmd : {extract_cmd, graph_cmd, run_cmd})
        cmd->add_option("--ann", config.ann_paths,
                        "Standoff annotation file(s)");
    for (CLI::App* cmd : {extract_cmd, run_cmd}) add_resource_options(cmd, config);
    graph_cmd->add_option("--gazetteer", config.gazetteer_path,
                          "Gazetteer TSV");
    for (CLI::App* cmd : {rank_cmd, subnet_cmd, export_cmd, run_cmd})
        add_rank_options(cmd, config, degree_mode, algorithm);
    for (CLI::App* cmd : {rank_cmd, subnet_cmd, export_cmd})
        cmd->add_option("--edges", edges_path, "Edge-list TSV input")
            ->required();
    for (CLI::App* cmd : {rank_cmd, subnet_cmd, run_cmd, export_cmd}) {
        cmd->add_option("--top-k", config.top_k, "Seed / report size")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--min-weight", config.min_weight,
                        "Minimum edge weight kept in the subnetwork")
            ->capture_default_str();
    }
    for (CLI::App* cmd : {graph_cmd, run_cmd})
        cmd->add_flag("--collapse-mirrors", config.collapse_mirrors,
                      "Count Theme/Theme2-mirrored duplicates once");
    for (CLI::App* cmd : {extract_cmd, run_cmd})
        cmd->add_flag("--strict", [&config](std::int64_t count) {
            if (count) config.validation = ValidationMode::Strict;
        }, "Strict annotation validation");
    run_cmd->add_flag("--stamp", config.stamp,
                      "Record wall-clock timestamps in the manifest");
    for (CLI::App* cmd :
         {ingest_cmd, extract_cmd, graph_cmd, rank_cmd, subnet_cmd, export_cmd,
          run_cmd})
        cmd->add_option("--out", config.out_dir, "Output directory")
            ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    apply_string_enums(config, degree_mode, algorithm);
    fs::path out_dir(config.out_dir);

    try {
        if (fetch->parsed()) {
            std::string stream;
            if (!offline_path.empty()) {
                stream = fetch_pubmed_offline(offline_path);
            } else if (!query.empty()) {
                FetchOptions opts;
                opts.max_records = max_records;
                opts.rate_limit = rate_limit;
                stream = fetch_pubmed(query, opts);
            } else {
                std::cerr << "fetch: need --query or --offline\n";
                return 2;
            }
            io::write_file(out_file, stream);
            std::cout << "wrote " << out_file << '\n';
        } else if (ingest_cmd->parsed()) {
            Corpus corpus = ingest(config);
            for (const auto& w : corpus.warnings)
                std::cerr << "warning: " << w << '\n';
            write_out(out_dir, "corpus.medline",
                      serialize_medline(corpus.records));
            write_out(out_dir, "dedup_report.csv", dedup_report_csv(corpus));
        } else if (extract_cmd->parsed()) {
            Corpus corpus = ingest(config);
            auto res = load_resources(config);
            auto events = extract_corpus(corpus, res, config.ann_paths);
            for (const auto& [pmid, set] : events) {
                auto report = validate(set, std::nullopt, config.validation);
                if (!report.ok(config.validation)) {
                    std::cerr << "validation failed for pmid " << pmid << '\n';
                    return 1;
                }
            }
            write_out(out_dir, "events.ann",
                      serialize_standoff_stream(events));
        } else if (graph_cmd->parsed()) {
            std::vector<std::pair<long long, AnnotationSet>> events;
            for (const auto& path : config.ann_paths)
                for (auto& doc : parse_standoff_stream(io::read_file(path)))
                    events.push_back(std::move(doc));
            Gazetteer gaz;
            if (!config.gazetteer_path.empty())
                gaz = Gazetteer::load(io::read_file(config.gazetteer_path));
            BuildOptions opts;
            opts.collapse_mirrors = config.collapse_mirrors;
            auto build = build_graph(events, gaz, opts);
            for (const auto& w : build.warnings)
                std::cerr << "warning: " << w << '\n';
            auto stats = graph_stats(build.graph);
            write_out(out_dir, "edges.tsv", build.graph.to_edge_list());
            write_out(out_dir, "histogram.csv", histogram_csv(stats));
            write_out(out_dir, "network_stats.csv", network_stats_csv(stats));
        } else if (rank_cmd->parsed()) {
            EventGraph g = load_graph(edges_path);
            RankResult ranks;
            if (!g.nodes().empty())
                ranks = rank_graph(g, config.rank_params, config.algorithm);
            write_out(out_dir, "rank.csv", rank_report_csv(ranks));
            write_out(out_dir, "rank_top.csv",
                      top_rank_csv(ranks, config.top_k));
        } else if (subnet_cmd->parsed()) {
            EventGraph g = load_graph(edges_path);
            EventGraph sub;
            if (!g.nodes().empty()) {
                auto ranks = rank_graph(g, config.rank_params, config.algorithm);
                std::set<Node> seeds;
                for (std::size_t i = 0;
                     i < std::min<std::size_t>(config.top_k,
                                               ranks.ranking.size());
                     ++i)
                    seeds.insert(ranks.ranking[i].node);
                sub = induced_subnetwork(g, seeds, config.min_weight);
            }
            write_out(out_dir, "subnet_edges.tsv", sub.to_edge_list());
        } else if (export_cmd->parsed()) {
            EventGraph g = load_graph(edges_path);
            RankResult ranks;
            if (!g.nodes().empty())
                ranks = rank_graph(g, config.rank_params, config.algorithm);
            write_out(out_dir, "graph.gexf", write_gexf(g, ranks));
            write_out(out_dir, "clusters.csv", clusters_csv(clusters(g)));
            write_out(out_dir, "rank_top.csv",
                      top_rank_csv(ranks, config.top_k));
        } else if (run_cmd->parsed()) {
            auto outputs = run_pipeline(config);
            for (const auto& w : outputs.corpus.warnings)
                std::cerr << "warning: " << w << '\n';
            std::cout << "records=" << outputs.corpus.records.size()
                      << " events=" << outputs.manifest.counts.at("events")
                      << " nodes=" << outputs.stats.node_count
                      << " edges=" << outputs.stats.edge_count << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
