// motifeval: evaluate, generate and analyse time-series motif discovery results.
//
// Exit codes: 0 success, 2 parse/validation failure, 3 ground-truth overlap.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"

#include "motifeval/analysis.hpp"
#include "motifeval/benchgen.hpp"
#include "motifeval/errors.hpp"
#include "motifeval/io.hpp"
#include "motifeval/parallel.hpp"
#include "motifeval/prom.hpp"
#include "motifeval/reference_metrics.hpp"
#include "motifeval/rwbaseline.hpp"

#ifndef MOTIFEVAL_VERSION
#define MOTIFEVAL_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using motifeval::io::json;
using namespace motifeval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitOverlap = 3;

/// Failure attributed to one input file; keeps the overlap/other distinction for the exit code.
struct InputOverlap : Error {
    using Error::Error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("MOTIFEVAL_SEED"); env && *env) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != std::string_view(env).size()) throw ParseError("MOTIFEVAL_SEED", "not an unsigned integer");
        return v;
    }
    return 0;
}

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

void emit(const std::string& text, const std::optional<std::string>& out) {
    if (!out) {
        std::cout << text;
        return;
    }
    const fs::path p(*out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ParseError(*out, "cannot open for writing");
    f << text;
}

/// Manifest: the command, every resolved flag, the seed, input digests and the tool
/// version. `config` keys are flag names, so a manifest can be turned back into argv.
json manifest(const std::string& command, const json& config, const std::vector<std::string>& inputs,
              std::optional<std::uint64_t> seed) {
    json digests = json::object();
    for (const auto& path : inputs) digests[path] = io::file_digest(path);
    json m{{"command", command}, {"config", config}, {"inputs", digests}, {"version", MOTIFEVAL_VERSION}};
    m["seed"] = seed ? json(*seed) : json(nullptr);
    return m;
}

void write_manifest(const fs::path& path, const json& m) { io::write_json_file(path, m); }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

MotifSetCollection load_ground_truth(const std::string& path) {
    auto gt = io::read_motif_sets(path, CollectionKind::ground_truth);
    const auto report = validate_ground_truth(gt);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw InputOverlap(fmt::format("{}: ground-truth motifs overlap: set {} motif {} and set {} motif {} ({} violation(s))",
                                       path, v.first.set, v.first.motif, v.second.set, v.second.motif,
                                       report.violations.size()));
    }
    return gt;
}

// ---------------------------------------------------------------------------- eval

struct EvalArgs {
    std::string gt, pred, metrics = "prom", averaging = "micro", format = "json";
    double or_threshold = 0.5;
    bool penalize_offtarget = false, score_penalize_offtarget = false;
    std::optional<std::string> out;
};

int cmd_eval(const EvalArgs& a) {
    const auto metrics = split_list(a.metrics);
    if (metrics.empty()) throw ParseError("--metrics", "no metric requested");
    for (const auto& m : metrics)
        if (m != "prom" && m != "cm" && m != "cg" && m != "score")
            throw ParseError("--metrics", fmt::format("unknown metric '{}' (expected prom, cm, cg, score)", m));

    EvalConfig cfg;
    cfg.or_threshold = a.or_threshold;
    cfg.penalize_off_target = a.penalize_offtarget;
    cfg.averaging = a.averaging == "macro" ? Averaging::macro : Averaging::micro;
    cfg.validate();

    const auto gt = load_ground_truth(a.gt);
    const auto pred = io::read_motif_sets(a.pred, CollectionKind::discovered);

    json results = json::object();
    std::vector<std::pair<std::string, double>> rows;
    for (const auto& m : metrics) {
        if (m == "prom") {
            const auto r = evaluate(gt, pred, cfg);
            results["prom"] = io::to_json(r);
            rows.insert(rows.end(), {{"prom.precision", r.precision},
                                     {"prom.recall", r.recall},
                                     {"prom.f1", r.f1},
                                     {"prom.tp", static_cast<double>(r.tp)},
                                     {"prom.fn", static_cast<double>(r.fn)},
                                     {"prom.fp", static_cast<double>(r.fp)}});
        } else if (m == "cm" || m == "cg") {
            const auto r = correctness(gt, pred, m == "cm" ? CorrectnessVariant::m : CorrectnessVariant::g);
            results[m] = io::to_json(r);
            rows.emplace_back(m, r.value);
        } else {
            const auto r = score(gt, pred, a.score_penalize_offtarget);
            results["score"] = io::to_json(r);
            rows.emplace_back("score", r.value);
        }
    }

    std::string text;
    if (a.format == "tsv") {
        text = "metric\tvalue\n";
        for (const auto& [k, v] : rows) text += fmt::format("{}\t{}\n", k, fixed6(v));
    } else {
        text = json{{"gt", a.gt}, {"pred", a.pred}, {"metrics", results}}.dump(2) + "\n";
    }
    emit(text, a.out);
    if (a.out) {
        const json config{{"gt", a.gt},
                          {"pred", a.pred},
                          {"metrics", a.metrics},
                          {"averaging", a.averaging},
                          {"or-threshold", a.or_threshold},
                          {"penalize-offtarget", a.penalize_offtarget},
                          {"score-penalize-offtarget", a.score_penalize_offtarget},
                          {"format", a.format},
                          {"out", *a.out}};
        write_manifest(*a.out + ".manifest.json", manifest("eval", config, {a.gt, a.pred}, std::nullopt));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------- gen

struct GenArgs {
    std::string dataset, out_dir;
    std::size_t n_val = 50, n_test = 200, max_cardinality = 5;
    double split_ratio = 0.25;
    std::optional<std::uint64_t> seed;
};

int cmd_gen(const GenArgs& a) {
    const std::uint64_t seed = resolve_seed(a.seed);
    const auto pool = io::dataset_from_json(io::read_json_file(a.dataset), a.dataset);

    BenchmarkOptions opt;
    opt.n_validation = a.n_val;
    opt.n_test = a.n_test;
    opt.validation_ratio = a.split_ratio;
    opt.constraints.max_cardinality = a.max_cardinality;
    const auto bench = generate_benchmark(pool, seed, opt);

    const fs::path root(a.out_dir);
    json outputs = json::array();
    auto write_split = [&](const std::string& split, const std::vector<BenchmarkSeries>& series) {
        fs::create_directories(root / split);
        std::vector<std::string> names(series.size());
        parallel_for(series.size(), [&](std::size_t i) {
            names[i] = fmt::format("{}/series_{:04d}.json", split, i);
            io::write_json_file(root / names[i], io::to_json(series[i]));
        });
        for (auto& n : names) outputs.push_back(n);
    };
    write_split("validation", bench.validation);
    write_split("test", bench.test);

    const json config{{"dataset", a.dataset},         {"out-dir", a.out_dir},
                      {"n-val", a.n_val},             {"n-test", a.n_test},
                      {"split-ratio", a.split_ratio}, {"max-cardinality", a.max_cardinality},
                      {"seed", seed}};
    auto m = manifest("gen", config, {a.dataset}, seed);
    m["outputs"] = outputs;
    write_manifest(root / "manifest.json", m);
    std::cout << fmt::format("wrote {} validation and {} test series to {}\n", bench.validation.size(),
                             bench.test.size(), root.string());
    return kExitOk;
}

// ---------------------------------------------------------------------------- rank

struct RankArgs {
    std::string results, mode = "combined", format = "json";
    std::optional<std::string> average_ranks_metric, out;
};

int cmd_rank(const RankArgs& a) {
    const auto table = io::results_from_json(io::read_json_file(a.results), a.results);
    const auto tm = tau_matrix(table, a.mode == "per-dataset" ? TauMode::per_dataset_average : TauMode::combined);
    std::optional<std::vector<MethodRank>> ranks;
    if (a.average_ranks_metric) ranks = average_ranks(table, *a.average_ranks_metric);

    std::string text;
    if (a.format == "tsv") {
        text = "metric";
        for (const auto& m : tm.metrics) text += "\t" + m;
        text += "\n";
        for (Eigen::Index i = 0; i < tm.tau.rows(); ++i) {
            text += tm.metrics[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < tm.tau.cols(); ++j) text += "\t" + fixed6(tm.tau(i, j));
            text += "\n";
        }
        if (ranks) {
            text += fmt::format("\nmethod\taverage_rank({})\n", *a.average_ranks_metric);
            for (const auto& r : *ranks) text += fmt::format("{}\t{}\n", r.method, fixed6(r.average_rank));
        }
    } else {
        json tau = json::array();
        for (Eigen::Index i = 0; i < tm.tau.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < tm.tau.cols(); ++j) row.push_back(io::round6(tm.tau(i, j)));
            tau.push_back(row);
        }
        json j{{"mode", a.mode}, {"metrics", tm.metrics}, {"tau", tau}};
        if (ranks) {
            json rows = json::array();
            for (const auto& r : *ranks) rows.push_back({{"method", r.method}, {"average_rank", io::round6(r.average_rank)}});
            j["average_ranks"] = {{"metric", *a.average_ranks_metric}, {"ranks", rows}};
        }
        text = j.dump(2) + "\n";
    }
    emit(text, a.out);
    if (a.out) {
        json config{{"results", a.results}, {"mode", a.mode}, {"format", a.format}, {"out", *a.out}};
        if (a.average_ranks_metric) config["average-ranks"] = *a.average_ranks_metric;
        write_manifest(*a.out + ".manifest.json", manifest("rank", config, {a.results}, std::nullopt));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------- rwdemo

struct RwDemoArgs {
    std::optional<std::string> dataset, out;
    std::size_t n_series = 20, min_insertions = 2, max_insertions = 8;
    std::optional<Index> window;
    Index length = 10000;
    double alpha = 0.05;
    bool per_class_gt = false;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

InstanceDataset rwdemo_pool(const RwDemoArgs& a, std::uint64_t seed) {
    if (a.dataset) return io::dataset_from_json(io::read_json_file(*a.dataset), *a.dataset);
    SyntheticPoolOptions o;
    o.noise = 0.01;
    return synthetic_pool(o, derive_seed(seed, "pool", 0));
}

int cmd_rwdemo(const RwDemoArgs& a) {
    const std::uint64_t seed = resolve_seed(a.seed);
    const auto pool = rwdemo_pool(a, seed);
    pool.validate();
    if (pool.dimensions != 1) throw ParseError(a.dataset.value_or("<synthetic>"), "rwdemo needs a univariate dataset");
    const Index window = a.window.value_or(pool.classes.front().instances.front().values.length() / 2);

    RwOptions opt;
    opt.min_insertions = a.min_insertions;
    opt.max_insertions = a.max_insertions;
    opt.length = a.length;
    const RwSolverOptions solver{window, a.alpha, {}, {}};
    df_critical_value(a.alpha);  // rejects untabulated alpha before any work

    struct Row {
        std::size_t inserted = 0;
        std::optional<EvalReport> report;
    };
    std::vector<Row> rows(a.n_series);
    parallel_for(a.n_series, [&](std::size_t i) {
        const auto s = generate_rw_series(pool, derive_seed(seed, "rwdemo", i), opt);
        const auto gt = a.per_class_gt ? s.per_class_ground_truth() : s.inserted;
        rows[i].inserted = gt.motif_count();
        if (gt.empty()) return;
        rows[i].report = evaluate(gt, rw_solver(s.series, solver));
    });

    double f1_sum = 0;
    std::size_t evaluated = 0;
    for (const auto& r : rows)
        if (r.report) {
            f1_sum += r.report->f1;
            ++evaluated;
        }
    const double mean_f1 = evaluated ? f1_sum / static_cast<double>(evaluated) : 0.0;
    const std::size_t skipped = a.n_series - evaluated;

    std::string text;
    if (a.format == "tsv") {
        text = "series\tinserted\tprecision\trecall\tf1\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (r.report)
                text += fmt::format("{}\t{}\t{}\t{}\t{}\n", i, r.inserted, fixed6(r.report->precision),
                                    fixed6(r.report->recall), fixed6(r.report->f1));
            else
                text += fmt::format("{}\t0\tskipped\tskipped\tskipped\n", i);
        }
        text += fmt::format("mean_f1\t{}\nevaluated\t{}\nskipped\t{}\n", fixed6(mean_f1), evaluated, skipped);
    } else {
        json series = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            json j{{"index", i}, {"inserted", r.inserted}};
            if (r.report) {
                j["precision"] = io::round6(r.report->precision);
                j["recall"] = io::round6(r.report->recall);
                j["f1"] = io::round6(r.report->f1);
            } else {
                j["skipped"] = "no inserted instances";
            }
            series.push_back(j);
        }
        text = json{{"window", window},
                    {"alpha", a.alpha},
                    {"series", series},
                    {"evaluated", evaluated},
                    {"skipped", skipped},
                    {"mean_f1", io::round6(mean_f1)}}
                   .dump(2) +
               "\n";
    }
    if (skipped) std::cerr << fmt::format("rwdemo: skipped {} series without inserted instances\n", skipped);
    emit(text, a.out);
    if (a.out) {
        json config{{"n-series", a.n_series},
                    {"window", window},
                    {"alpha", a.alpha},
                    {"min-insertions", a.min_insertions},
                    {"max-insertions", a.max_insertions},
                    {"length", a.length},
                    {"per-class-gt", a.per_class_gt},
                    {"format", a.format},
                    {"seed", seed},
                    {"out", *a.out}};
        std::vector<std::string> inputs;
        if (a.dataset) {
            config["dataset"] = *a.dataset;
            inputs.push_back(*a.dataset);
        }
        write_manifest(*a.out + ".manifest.json", manifest("rwdemo", config, inputs, seed));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------- dataset helpers

int cmd_import_ucr(const std::string& input, const std::optional<std::string>& name, const std::string& out) {
    const auto ds = io::import_ucr(input, name.value_or(fs::path(input).stem().string()));
    io::write_json_file(out, io::to_json(ds));
    std::cout << fmt::format("imported {} instances in {} classes into {}\n", ds.instance_count(), ds.class_count(), out);
    return kExitOk;
}

int cmd_synth_pool(SyntheticPoolOptions o, std::optional<std::uint64_t> seed_flag, const std::string& out) {
    const auto seed = resolve_seed(seed_flag);
    io::write_json_file(out, io::to_json(synthetic_pool(o, seed)));
    return kExitOk;
}

// ---------------------------------------------------------------------------- driver

int run(std::vector<std::string> args);

/// Rebuilds argv from a manifest's resolved configuration and re-runs the command.
int cmd_replay(const std::string& path) {
    const auto m = io::read_json_file(path);
    if (!m.contains("command") || !m.contains("config") || !m["config"].is_object())
        throw ParseError(path, "not a manifest (needs \"command\" and \"config\")");
    std::vector<std::string> args{m["command"].get<std::string>()};
    for (const auto& [key, value] : m["config"].items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (!value.is_null()) {
            args.push_back("--" + key);
            args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return run(std::move(args));
}

int run(std::vector<std::string> args) {
    CLI::App app{"Evaluate, generate and analyse time-series motif discovery results", "motifeval"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MOTIFEVAL_VERSION);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Score discovered motif sets against ground truth");
    eval->add_option("--gt", ev.gt, "Ground-truth motif-set or benchmark-series file")->required();
    eval->add_option("--pred", ev.pred, "Discovered motif-set file")->required();
    eval->add_option("--metrics", ev.metrics, "Comma list of prom, cm, cg, score")->capture_default_str();
    eval->add_option("--averaging", ev.averaging, "PROM averaging")
        ->check(CLI::IsMember({"micro", "macro"}))
        ->capture_default_str();
    eval->add_option("--or-threshold", ev.or_threshold, "Overlap rate a match must exceed, in [0.5, 1)")
        ->capture_default_str();
    eval->add_flag("--penalize-offtarget", ev.penalize_offtarget, "Count unpaired discovered sets as FP (PROM)");
    eval->add_flag("--score-penalize-offtarget", ev.score_penalize_offtarget,
                   "Charge unpaired discovered sets (score metric)");
    eval->add_option("--format", ev.format)->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    eval->add_option("--out", ev.out, "Output file (also writes <out>.manifest.json)");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate benchmark series from a labeled instance dataset");
    gen_cmd->add_option("--dataset", gen.dataset, "Instance dataset file")->required();
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
    gen_cmd->add_option("--n-val", gen.n_val, "Validation series")->capture_default_str();
    gen_cmd->add_option("--n-test", gen.n_test, "Test series")->capture_default_str();
    gen_cmd->add_option("--split-ratio", gen.split_ratio, "Validation share of each class")->capture_default_str();
    gen_cmd->add_option("--max-cardinality", gen.max_cardinality, "Largest motif-set size")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Seed (falls back to MOTIFEVAL_SEED, then 0)");

    RankArgs rank;
    auto* rank_cmd = app.add_subcommand("rank", "Kendall tau matrix and average ranks from a results table");
    rank_cmd->add_option("--results", rank.results, "Results table file")->required();
    rank_cmd->add_option("--mode", rank.mode)->check(CLI::IsMember({"combined", "per-dataset"}))->capture_default_str();
    rank_cmd->add_option("--average-ranks", rank.average_ranks_metric, "Also rank methods by this metric");
    rank_cmd->add_option("--format", rank.format)->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    rank_cmd->add_option("--out", rank.out, "Output file (also writes <out>.manifest.json)");

    RwDemoArgs rw;
    auto* rw_cmd = app.add_subcommand("rwdemo", "Random-walk benchmark solved by a stationarity test");
    rw_cmd->add_option("--dataset", rw.dataset, "Instance dataset to insert (default: synthetic smooth pool)");
    rw_cmd->add_option("--n-series", rw.n_series)->capture_default_str();
    rw_cmd->add_option("--window", rw.window, "Test window (default: half the instance length)");
    rw_cmd->add_option("--alpha", rw.alpha, "Significance level: 0.01, 0.025, 0.05 or 0.1")->capture_default_str();
    rw_cmd->add_option("--min-insertions", rw.min_insertions)->capture_default_str();
    rw_cmd->add_option("--max-insertions", rw.max_insertions)->capture_default_str();
    rw_cmd->add_option("--length", rw.length, "Series length")->capture_default_str();
    rw_cmd->add_flag("--per-class-gt", rw.per_class_gt, "One GT set per inserted class instead of a single set");
    rw_cmd->add_option("--format", rw.format)->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    rw_cmd->add_option("--seed", rw.seed, "Seed (falls back to MOTIFEVAL_SEED, then 0)");
    rw_cmd->add_option("--out", rw.out, "Output file (also writes <out>.manifest.json)");

    std::string ucr_input, ucr_out;
    std::optional<std::string> ucr_name;
    auto* ucr = app.add_subcommand("import-ucr", "Convert a UCR-style text file to a dataset file");
    ucr->add_option("--input", ucr_input)->required();
    ucr->add_option("--name", ucr_name, "Dataset name (default: file stem)");
    ucr->add_option("--out", ucr_out)->required();

    SyntheticPoolOptions pool;
    std::optional<std::uint64_t> pool_seed;
    std::string pool_out;
    auto* synth = app.add_subcommand("synth-pool", "Write a synthetic labeled instance dataset");
    synth->add_option("--classes", pool.classes)->capture_default_str();
    synth->add_option("--per-class", pool.instances_per_class)->capture_default_str();
    synth->add_option("--length", pool.length)->capture_default_str();
    synth->add_option("--dims", pool.dimensions)->capture_default_str();
    synth->add_option("--noise", pool.noise)->capture_default_str();
    synth->add_option("--name", pool.name)->capture_default_str();
    synth->add_option("--seed", pool_seed, "Seed (falls back to MOTIFEVAL_SEED, then 0)");
    synth->add_option("--out", pool_out)->required();

    std::string manifest_path;
    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("manifest", manifest_path)->required();

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    if (*eval) return cmd_eval(ev);
    if (*gen_cmd) return cmd_gen(gen);
    if (*rank_cmd) return cmd_rank(rank);
    if (*rw_cmd) return cmd_rwdemo(rw);
    if (*ucr) return cmd_import_ucr(ucr_input, ucr_name, ucr_out);
    if (*synth) return cmd_synth_pool(pool, pool_seed, pool_out);
    if (*replay) return cmd_replay(manifest_path);
    return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const InputOverlap& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverlap;
    } catch (const GroundTruthOverlap& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverlap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
