// credal: evidential and fuzzy c-medoids clustering for relational data.
//
// Subcommands: cluster, evaluate, validity-scan, graph-dissim.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credal/credal.hpp"

namespace {

using namespace credal;

struct InitOptions {
    std::vector<int> indices;
    std::string mode = "auto";  // auto: explicit when indices given, else farthest-first
    bool one_based = false;
    std::optional<int> first;
    std::uint64_t seed = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--init-indices", indices,
                        "explicit initial medoid indices (comma separated)")
            ->delimiter(',');
        cmd->add_option("--init-mode", mode, "explicit | farthest-first | random")
            ->check(CLI::IsMember({"auto", "explicit", "farthest-first", "random"}))
            ->capture_default_str();
        cmd->add_flag("--one-based", one_based,
                      "treat --init-indices and --first as 1-based");
        cmd->add_option_function<int>(
               "--first", [this](const int& v) { first = v; },
               "first medoid for farthest-first initialization");
        cmd->add_option("--seed", seed, "seed for random initialization choices")
            ->capture_default_str();
    }

    InitSpec resolve(int restart) const {
        InitSpec spec;
        std::string m = mode;
        if (m == "auto") m = indices.empty() ? "farthest-first" : "explicit";
        if (m == "explicit") {
            spec.mode = InitMode::Explicit;
            spec.indices = indices;
            if (one_based)
                for (int& v : spec.indices) --v;
        } else if (m == "farthest-first") {
            spec.mode = InitMode::FarthestFirst;
            if (first) spec.first = one_based ? *first - 1 : *first;
            spec.seed = seed + static_cast<std::uint64_t>(restart);
        } else {
            spec.mode = InitMode::Random;
            spec.seed = seed + static_cast<std::uint64_t>(restart);
        }
        return spec;
    }
};

SpreadFunction parse_spread(const std::string& s) {
    return s == "var" ? SpreadFunction::Variance : SpreadFunction::PairwiseAbs;
}

MetricsBlock compute_metrics(const std::vector<int>& crisp,
                             const std::vector<FocalSet>& max_mass,
                             const std::vector<int>& ref) {
    MetricsBlock block;
    block.classic = precision_recall_ri(crisp, ref);
    if (!max_mass.empty()) block.evidential = evidential_metrics(max_mass, ref);
    return block;
}

void warn_degenerate(const MetricsBlock& m) {
    if (m.classic.precision_degenerate)
        std::cerr << "warning: precision denominator is zero, reported as 1\n";
    if (m.classic.recall_degenerate)
        std::cerr << "warning: recall denominator is zero, reported as 1\n";
    if (m.evidential && m.evidential->ep_degenerate)
        std::cerr << "warning: evidential precision has no specific pairs, reported as 1\n";
    if (m.evidential && m.evidential->er_degenerate)
        std::cerr << "warning: evidential recall has no reference pairs, reported as 1\n";
}

struct ClusterOptions {
    std::string input;
    std::string algorithm = "ecmdd";
    int c = 0;
    EcmddParams ecmdd;
    std::string spread = "rho";
    int restarts = 1;
    InitOptions init;
    std::string labels_path;
    std::string output = "-";
    std::string format = "json";
};

RunReport run_ecmdd_restarts(const DissimilarityMatrix& d, const ClusterOptions& opt) {
    EcmddParams params = opt.ecmdd;
    params.spread = parse_spread(opt.spread);
    std::optional<EcmddResult> best;
    std::vector<int> best_init;
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<int> init = choose_initial_medoids(d, opt.c, opt.init.resolve(r));
        EcmddResult res = ecmdd_cluster(d, opt.c, params, init);
        if (!best || res.state.objective < best->state.objective) {
            best = std::move(res);
            best_init = std::move(init);
        }
    }
    const EcmddResult& res = *best;
    RunReport rep;
    rep.algorithm = "ecmdd";
    rep.parameters = {{"alpha", params.alpha},
                      {"beta", params.beta},
                      {"delta", params.delta},
                      {"eta", params.eta},
                      {"gamma", params.gamma},
                      {"empty_penalty_exponent", params.empty_penalty_exponent},
                      {"spread", opt.spread},
                      {"max_iter", params.max_iter},
                      {"restarts", opt.restarts},
                      {"seed", opt.init.seed}};
    rep.n = d.size();
    rep.c = opt.c;
    rep.object_labels = d.labels();
    rep.initial_medoids = best_init;
    rep.final_specific = res.state.medoids.specific;
    for (std::size_t j = 1; j < res.state.medoids.meta.size(); ++j) {
        const FocalSet set{static_cast<std::uint32_t>(j)};
        if (set.cardinality() >= 2) rep.final_meta.emplace_back(set, res.state.medoids.meta[j]);
    }
    for (int i = 0; i < d.size(); ++i) rep.matrix.push_back(res.state.masses.row(i));
    rep.pignistic = pignistic_matrix(res.state.masses);
    rep.crisp_labels = harden_max_pignistic(res.state.masses);
    rep.max_mass_labels = harden_max_mass(res.state.masses);
    rep.trace = res.trace;
    rep.validity = validity_index(res.state.masses);
    rep.converged = res.converged;
    rep.iterations = res.state.iteration;
    return rep;
}

RunReport run_fcmdd_restarts(const DissimilarityMatrix& d, const ClusterOptions& opt) {
    // --beta and --max-iter are shared flags
    FcmddParams params{opt.ecmdd.beta, opt.ecmdd.max_iter};
    std::optional<FcmddResult> best;
    std::vector<int> best_init;
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<int> init = choose_initial_medoids(d, opt.c, opt.init.resolve(r));
        FcmddResult res = fcmdd_cluster(d, opt.c, params, init);
        if (!best || res.objective < best->objective) {
            best = std::move(res);
            best_init = std::move(init);
        }
    }
    const FcmddResult& res = *best;
    RunReport rep;
    rep.algorithm = "fcmdd";
    rep.parameters = {{"beta", params.beta},
                      {"max_iter", params.max_iter},
                      {"restarts", opt.restarts},
                      {"seed", opt.init.seed}};
    rep.n = d.size();
    rep.c = opt.c;
    rep.object_labels = d.labels();
    rep.initial_medoids = best_init;
    rep.final_specific = res.medoids;
    for (int i = 0; i < d.size(); ++i) {
        std::vector<double> row;
        for (int j = 0; j < opt.c; ++j) row.push_back(res.memberships.membership(i, j));
        rep.matrix.push_back(std::move(row));
    }
    rep.crisp_labels = harden_max_membership(res.memberships);
    rep.trace = res.trace;
    rep.converged = res.converged;
    rep.iterations = res.iterations;
    return rep;
}

int cmd_cluster(const ClusterOptions& opt) {
    DissimilarityMatrix d = load_dissimilarity_csv(opt.input);
    RunReport rep = opt.algorithm == "ecmdd" ? run_ecmdd_restarts(d, opt)
                                             : run_fcmdd_restarts(d, opt);
    if (!opt.labels_path.empty()) {
        LabelFile ref = load_labels(opt.labels_path);
        require_label_count(ref, d.size(), opt.labels_path);
        rep.metrics = compute_metrics(rep.crisp_labels, rep.max_mass_labels, ref.labels);
        warn_degenerate(*rep.metrics);
    }
    if (opt.format == "csv") {
        if (opt.output == "-")
            throw std::invalid_argument("csv format needs --output DIRECTORY");
        write_report(rep, opt.output, ReportFormat::CsvBundle);
    } else if (opt.output == "-") {
        std::cout << render_report_json(rep);
    } else {
        write_report(rep, opt.output, ReportFormat::Json);
    }
    if (!rep.converged) {
        std::cerr << "warning: did not converge within max_iter\n";
        return 2;
    }
    return 0;
}

struct EvaluateOptions {
    std::string pred;
    std::string ref;
};

bool looks_like_json(const std::string& path) {
    std::ifstream in(path);
    char ch;
    while (in.get(ch)) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{';
    }
    return false;
}

int cmd_evaluate(const EvaluateOptions& opt) {
    LabelFile ref = load_labels(opt.ref);
    std::vector<int> crisp;
    std::vector<FocalSet> max_mass;
    if (looks_like_json(opt.pred)) {
        ReportLabels rl = load_report_labels(opt.pred);
        crisp = rl.crisp;
        max_mass = rl.max_mass;
    } else {
        crisp = load_labels(opt.pred).labels;
    }
    if (crisp.size() != ref.labels.size())
        throw std::domain_error("evaluate: prediction has " + std::to_string(crisp.size()) +
                                " labels, reference has " + std::to_string(ref.labels.size()));
    // crisp predictions still get the evidential triple, via their singleton view
    if (max_mass.empty()) max_mass = crisp_to_singletons(crisp);
    MetricsBlock m = compute_metrics(crisp, max_mass, ref.labels);
    warn_degenerate(m);
    std::printf("precision %.6f\n", m.classic.precision);
    std::printf("recall %.6f\n", m.classic.recall);
    std::printf("rand_index %.6f\n", m.classic.rand_index);
    if (m.evidential) {
        std::printf("evidential_precision %.6f\n", m.evidential->ep);
        std::printf("evidential_recall %.6f\n", m.evidential->er);
        std::printf("evidential_rand_index %.6f\n", m.evidential->eri);
    }
    return 0;
}

struct ScanOptions {
    std::string input;
    int c_min = 2;
    int c_max = 4;
    ClusterOptions base;
};

int cmd_validity_scan(ScanOptions& opt) {
    DissimilarityMatrix d = load_dissimilarity_csv(opt.input);
    EcmddParams params = opt.base.ecmdd;
    params.spread = parse_spread(opt.base.spread);
    struct Row {
        int c;
        bool ok;
        double validity;
        bool converged;
        std::string error;
    };
    std::vector<Row> rows;
    for (int c = opt.c_min; c <= opt.c_max; ++c) {
        Row row{c, false, 0.0, false, ""};
        try {
            std::vector<int> init = choose_initial_medoids(d, c, opt.base.init.resolve(0));
            EcmddResult res = ecmdd_cluster(d, c, params, init);
            row.ok = true;
            row.validity = validity_index(res.state.masses);
            row.converged = res.converged;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    }
    int best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].ok && (best < 0 || rows[i].validity < rows[static_cast<std::size_t>(best)].validity))
            best = static_cast<int>(i);
    std::printf("c validity_index\n");
    bool any_ok = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (row.ok) {
            any_ok = true;
            std::printf("%d %.6f%s%s\n", row.c, row.validity,
                        static_cast<int>(i) == best ? " *" : "",
                        row.converged ? "" : " (not converged)");
        } else {
            std::printf("%d error: %s\n", row.c, row.error.c_str());
        }
    }
    return any_ok ? 0 : 1;
}

struct GraphOptions {
    std::string input;
    std::string indexing = "one-based";
    bool include_self = true;
    std::string output = "-";
};

int cmd_graph_dissim(const GraphOptions& opt) {
    Indexing idx = Indexing::OneBased;
    if (opt.indexing == "zero-based") idx = Indexing::ZeroBased;
    else if (opt.indexing == "named") idx = Indexing::Named;
    Graph g = load_edge_list(opt.input, idx);
    DissimilarityMatrix d = jaccard_dissimilarity(g, opt.include_self);
    if (opt.output == "-")
        write_dissimilarity_csv(d, std::cout);
    else
        write_dissimilarity_csv(d, opt.output);
    return 0;
}

void add_ecmdd_params(CLI::App* cmd, ClusterOptions& opt) {
    cmd->add_option("--alpha", opt.ecmdd.alpha, "cardinality penalty exponent")
        ->capture_default_str();
    cmd->add_option("--beta", opt.ecmdd.beta, "weighting exponent (> 1)")->capture_default_str();
    cmd->add_option("--delta", opt.ecmdd.delta, "outlier threshold (> 0)")->capture_default_str();
    cmd->add_option("--eta", opt.ecmdd.eta, "meta-prototype outlier penalty (> 0)")
        ->capture_default_str();
    cmd->add_option("--gamma", opt.ecmdd.gamma, "imprecise-dissimilarity balance (>= 0)")
        ->capture_default_str();
    cmd->add_option("--empty-penalty-exponent", opt.ecmdd.empty_penalty_exponent,
                    "1 follows the printed mass update, 2 the written objective")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd->add_option("--spread", opt.spread, "meta-prototype spread function: rho | var")
        ->check(CLI::IsMember({"rho", "var"}))
        ->capture_default_str();
    cmd->add_option("--max-iter", opt.ecmdd.max_iter, "iteration cap")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evidential and fuzzy c-medoids clustering for relational data"};
    app.require_subcommand(1);

    ClusterOptions cluster_opt;
    CLI::App* cluster = app.add_subcommand("cluster", "cluster a dissimilarity matrix");
    cluster->add_option("--input", cluster_opt.input, "dissimilarity matrix CSV")->required();
    cluster->add_option("--algorithm", cluster_opt.algorithm, "ecmdd | fcmdd")
        ->check(CLI::IsMember({"ecmdd", "fcmdd"}))
        ->capture_default_str();
    cluster->add_option("--c", cluster_opt.c, "number of clusters")->required();
    add_ecmdd_params(cluster, cluster_opt);
    cluster->add_option("--restarts", cluster_opt.restarts, "independent restarts, best objective wins")
        ->capture_default_str();
    cluster_opt.init.add_flags(cluster);
    cluster->add_option("--labels", cluster_opt.labels_path, "reference labels for metrics");
    cluster->add_option("--output", cluster_opt.output, "output path, '-' for stdout")
        ->capture_default_str();
    cluster->add_option("--format", cluster_opt.format, "json | csv (bundle directory)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    EvaluateOptions eval_opt;
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a prediction against reference labels");
    evaluate->add_option("--pred", eval_opt.pred, "report JSON or crisp label file")->required();
    evaluate->add_option("--ref", eval_opt.ref, "reference label file")->required();

    ScanOptions scan_opt;
    CLI::App* scan = app.add_subcommand("validity-scan",
                                        "run ecmdd over a range of c and report N*(c)");
    scan->add_option("--input", scan_opt.input, "dissimilarity matrix CSV")->required();
    scan->add_option("--c-min", scan_opt.c_min, "smallest cluster count (>= 2)")
        ->capture_default_str();
    scan->add_option("--c-max", scan_opt.c_max, "largest cluster count (<= 16)")
        ->capture_default_str();
    add_ecmdd_params(scan, scan_opt.base);
    scan_opt.base.init.add_flags(scan);

    GraphOptions graph_opt;
    CLI::App* graph = app.add_subcommand("graph-dissim",
                                         "build a Jaccard dissimilarity matrix from an edge list");
    graph->add_option("--input", graph_opt.input, "edge list file")->required();
    graph->add_option("--indexing", graph_opt.indexing, "zero-based | one-based | named")
        ->check(CLI::IsMember({"zero-based", "one-based", "named"}))
        ->capture_default_str();
    graph->add_flag("--include-self,!--no-include-self", graph_opt.include_self,
                    "use closed neighborhoods (default on)");
    graph->add_option("--output", graph_opt.output, "output CSV path, '-' for stdout")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*cluster) return cmd_cluster(cluster_opt);
        if (*evaluate) return cmd_evaluate(eval_opt);
        if (*scan) {
            if (scan_opt.c_min < 2 || scan_opt.c_min > scan_opt.c_max || scan_opt.c_max > 16) {
                std::cerr << "error: need 2 <= c-min <= c-max <= 16\n";
                return 1;
            }
            return cmd_validity_scan(scan_opt);
        }
        if (*graph) return cmd_graph_dissim(graph_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
