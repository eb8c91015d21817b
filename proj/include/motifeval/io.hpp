#pragma once

// JSON file formats. All indices are 0-based inclusive.
//
//   motif sets  {"motif_sets":[{"label":"A","motifs":[{"start":0,"end":9}]}]}
//   dataset     {"name":"X","dimensions":D,"classes":[{"label":"A","instances":[[[v x D] x len]]}]}
//   series      {"values":[[v x D] x n],"ground_truth":{"motif_sets":[...]},"fillers":[...],
//                "layout":[...],"provenance":{...}}
//   results     {"records":[{"dataset":..,"series":..,"method":..,"metric":..,"value":..}],
//                "directions":{"S":"lower_better"}}   (a bare records array is accepted too)

#include <filesystem>
#include <string>

#include "json.hpp"

#include "motifeval/analysis.hpp"
#include "motifeval/benchgen.hpp"
#include "motifeval/core.hpp"
#include "motifeval/prom.hpp"
#include "motifeval/reference_metrics.hpp"

namespace motifeval::io {

using json = nlohmann::json;

/// Parse helpers throw ParseError whose location is `source` plus a JSON path.
MotifSetCollection motif_sets_from_json(const json& j, CollectionKind kind, const std::string& source = "<json>");
json to_json(const MotifSetCollection& c);

InstanceDataset dataset_from_json(const json& j, const std::string& source = "<json>");
json to_json(const InstanceDataset& ds);

BenchmarkSeries series_from_json(const json& j, const std::string& source = "<json>");
json to_json(const BenchmarkSeries& s);

ResultsTable results_from_json(const json& j, const std::string& source = "<json>");
json to_json(const ResultsTable& t);

/// Report fields rounded to 6 decimals.
json to_json(const EvalReport& r);
json to_json(const CorrectnessResult& r);
json to_json(const ScoreResult& r);

/// Rounds to 6 decimal places for stable textual output.
double round6(double v);

/// Reads and parses a JSON file; ParseError names the file and line/column on failure.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Motif-set file, or a benchmark-series file whose "ground_truth" is used.
MotifSetCollection read_motif_sets(const std::filesystem::path& path, CollectionKind kind);

/// Tab/comma/space separated "label v1 v2 ..." lines (UCR archive layout, univariate,
/// fixed length). Classes appear in first-seen order; instance ids follow line order.
InstanceDataset import_ucr(const std::filesystem::path& path, const std::string& name);

/// Hex SHA-256 of a file's bytes.
std::string file_digest(const std::filesystem::path& path);

}  // namespace motifeval::io
