#include "motifeval/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace motifeval::io {

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        throw ParseError(source_ + " at " + (path.empty() ? "<root>" : path), what);
    }

    const json& field(const json& obj, const std::string& path, const char* key) const {
        if (!obj.is_object()) fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
        return *it;
    }

    const json& array(const json& j, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected an array");
        return j;
    }

    Index integer(const json& j, const std::string& path) const {
        if (!j.is_number_integer()) fail(path, "expected an integer");
        return j.get<Index>();
    }

    std::uint64_t unsigned_integer(const json& j, const std::string& path) const {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<Index>() >= 0))
            fail(path, "expected a non-negative integer");
        return j.get<std::uint64_t>();
    }

    double number(const json& j, const std::string& path) const {
        if (!j.is_number()) fail(path, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v)) fail(path, "expected a finite number");
        return v;
    }

    std::string string(const json& j, const std::string& path) const {
        if (!j.is_string()) fail(path, "expected a string");
        return j.get<std::string>();
    }

    Segment segment(const json& j, const std::string& path) const {
        const Index s = integer(field(j, path, "start"), path + ".start");
        const Index e = integer(field(j, path, "end"), path + ".end");
        if (s < 0 || e < s) fail(path, fmt::format("invalid segment [{}:{}]", s, e));
        return {s, e};
    }

    // [[v x D] x n] or, for D = 1, a flat [v x n].
    TimeSeries series(const json& j, const std::string& path, std::optional<Index> dims) const {
        array(j, path);
        if (j.empty()) fail(path, "series has no samples");
        const bool flat = !j.front().is_array();
        const Index n = static_cast<Index>(j.size());
        const Index d = flat ? 1 : static_cast<Index>(j.front().size());
        if (dims && *dims != d) fail(path, fmt::format("expected {} dimensions, found {}", *dims, d));
        if (d < 1) fail(path, "sample has no components");
        TimeSeries::Matrix m(n, d);
        for (Index t = 0; t < n; ++t) {
            const auto& row = j[static_cast<std::size_t>(t)];
            const auto rp = fmt::format("{}[{}]", path, t);
            if (flat) {
                m(t, 0) = number(row, rp);
                continue;
            }
            if (!row.is_array() || static_cast<Index>(row.size()) != d)
                fail(rp, fmt::format("expected {} components", d));
            for (Index c = 0; c < d; ++c) m(t, c) = number(row[static_cast<std::size_t>(c)], fmt::format("{}[{}]", rp, c));
        }
        return TimeSeries(std::move(m));
    }

    MotifSetCollection motif_sets(const json& root, CollectionKind kind, const std::string& base) const {
        const std::string sets_path = base.empty() ? "motif_sets" : base + ".motif_sets";
        const auto& sets = array(field(root, base, "motif_sets"), sets_path);
        std::vector<MotifSet> out;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto sp = fmt::format("{}[{}]", sets_path, i);
            const auto& s = sets[i];
            std::optional<std::string> label;
            if (s.is_object() && s.contains("label") && !s["label"].is_null()) label = string(s["label"], sp + ".label");
            const auto& motifs = array(field(s, sp, "motifs"), sp + ".motifs");
            if (motifs.empty()) fail(sp + ".motifs", "motif set has no motifs");
            std::vector<Segment> segs;
            for (std::size_t k = 0; k < motifs.size(); ++k)
                segs.push_back(segment(motifs[k], fmt::format("{}.motifs[{}]", sp, k)));
            out.emplace_back(std::move(segs), std::move(label));
        }
        return MotifSetCollection(kind, std::move(out));
    }

private:
    std::string source_;
};

json values_to_json(const TimeSeries& s) {
    json rows = json::array();
    for (Index t = 0; t < s.length(); ++t) {
        json row = json::array();
        for (Index d = 0; d < s.dimensions(); ++d) row.push_back(s.values()(t, d));
        rows.push_back(std::move(row));
    }
    return rows;
}

json segment_json(const Segment& s) { return {{"start", s.start()}, {"end", s.end()}}; }

}  // namespace

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

MotifSetCollection motif_sets_from_json(const json& j, CollectionKind kind, const std::string& source) {
    return Reader(source).motif_sets(j, kind, "");
}

json to_json(const MotifSetCollection& c) {
    json sets = json::array();
    for (const auto& s : c.sets()) {
        json motifs = json::array();
        for (const auto& m : s.motifs()) motifs.push_back(segment_json(m));
        json entry = {{"motifs", std::move(motifs)}};
        entry["label"] = s.label() ? json(*s.label()) : json(nullptr);
        sets.push_back(std::move(entry));
    }
    return {{"motif_sets", std::move(sets)}};
}

InstanceDataset dataset_from_json(const json& j, const std::string& source) {
    Reader r(source);
    InstanceDataset ds;
    ds.name = r.string(r.field(j, "", "name"), "name");
    ds.dimensions = r.integer(r.field(j, "", "dimensions"), "dimensions");
    if (ds.dimensions < 1) r.fail("dimensions", "must be at least 1");
    const auto& classes = r.array(r.field(j, "", "classes"), "classes");
    if (classes.empty()) r.fail("classes", "dataset has no classes");
    std::size_t next_id = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto cp = fmt::format("classes[{}]", c);
        InstanceClass cls;
        cls.label = r.string(r.field(classes[c], cp, "label"), cp + ".label");
        const auto& instances = r.array(r.field(classes[c], cp, "instances"), cp + ".instances");
        if (instances.empty()) r.fail(cp + ".instances", "class has no instances");
        for (std::size_t i = 0; i < instances.size(); ++i)
            cls.instances.push_back({next_id++, r.series(instances[i], fmt::format("{}.instances[{}]", cp, i), ds.dimensions)});
        ds.classes.push_back(std::move(cls));
    }
    return ds;
}

json to_json(const InstanceDataset& ds) {
    json classes = json::array();
    for (const auto& c : ds.classes) {
        json instances = json::array();
        for (const auto& inst : c.instances) instances.push_back(values_to_json(inst.values));
        classes.push_back({{"label", c.label}, {"instances", std::move(instances)}});
    }
    return {{"name", ds.name}, {"dimensions", ds.dimensions}, {"classes", std::move(classes)}};
}

BenchmarkSeries series_from_json(const json& j, const std::string& source) {
    Reader r(source);
    BenchmarkSeries s;
    std::optional<Index> dims;
    if (j.is_object() && j.contains("dimensions")) dims = r.integer(j["dimensions"], "dimensions");
    s.series = r.series(r.field(j, "", "values"), "values", dims);
    s.ground_truth = r.motif_sets(r.field(j, "", "ground_truth"), CollectionKind::ground_truth, "ground_truth");

    if (j.contains("fillers")) {
        const auto& fillers = r.array(j["fillers"], "fillers");
        for (std::size_t i = 0; i < fillers.size(); ++i) {
            const auto p = fmt::format("fillers[{}]", i);
            s.fillers.push_back({r.segment(fillers[i], p), r.string(r.field(fillers[i], p, "label"), p + ".label")});
        }
    }
    if (j.contains("layout")) {
        const auto& layout = r.array(j["layout"], "layout");
        for (std::size_t i = 0; i < layout.size(); ++i) {
            const auto p = fmt::format("layout[{}]", i);
            const auto& e = layout[i];
            const auto& motif = r.field(e, p, "motif");
            if (!motif.is_boolean()) r.fail(p + ".motif", "expected a boolean");
            s.layout.push_back({r.segment(e, p), static_cast<std::size_t>(r.unsigned_integer(r.field(e, p, "class_index"), p + ".class_index")),
                                static_cast<std::size_t>(r.unsigned_integer(r.field(e, p, "instance_id"), p + ".instance_id")),
                                motif.get<bool>()});
        }
    }
    if (j.contains("provenance")) {
        const auto& p = j["provenance"];
        s.provenance.dataset = r.string(r.field(p, "provenance", "dataset"), "provenance.dataset");
        s.provenance.split = r.string(r.field(p, "provenance", "split"), "provenance.split");
        s.provenance.seed = r.unsigned_integer(r.field(p, "provenance", "seed"), "provenance.seed");
        s.provenance.series_index =
            static_cast<std::size_t>(r.unsigned_integer(r.field(p, "provenance", "series_index"), "provenance.series_index"));
    }
    return s;
}

json to_json(const BenchmarkSeries& s) {
    json fillers = json::array();
    for (const auto& f : s.fillers) {
        auto e = segment_json(f.segment);
        e["label"] = f.label;
        fillers.push_back(std::move(e));
    }
    json layout = json::array();
    for (const auto& e : s.layout) {
        auto x = segment_json(e.segment);
        x["class_index"] = e.class_index;
        x["instance_id"] = e.instance_id;
        x["motif"] = e.is_motif;
        layout.push_back(std::move(x));
    }
    return {{"dimensions", s.series.dimensions()},
            {"length", s.series.length()},
            {"values", values_to_json(s.series)},
            {"ground_truth", to_json(s.ground_truth)},
            {"fillers", std::move(fillers)},
            {"layout", std::move(layout)},
            {"provenance",
             {{"dataset", s.provenance.dataset},
              {"split", s.provenance.split},
              {"seed", s.provenance.seed},
              {"series_index", s.provenance.series_index}}}};
}

ResultsTable results_from_json(const json& j, const std::string& source) {
    Reader r(source);
    ResultsTable t;
    const json* records = &j;
    std::string base;
    if (j.is_object()) {
        records = &r.field(j, "", "records");
        base = "records";
        if (j.contains("directions")) {
            const auto& dirs = j["directions"];
            if (!dirs.is_object()) r.fail("directions", "expected an object");
            for (const auto& [metric, v] : dirs.items()) {
                const auto d = r.string(v, "directions." + metric);
                if (d == "higher_better")
                    t.set_direction(metric, Direction::higher_better);
                else if (d == "lower_better")
                    t.set_direction(metric, Direction::lower_better);
                else
                    r.fail("directions." + metric, "expected 'higher_better' or 'lower_better'");
            }
        }
    }
    r.array(*records, base);
    for (std::size_t i = 0; i < records->size(); ++i) {
        const auto p = fmt::format("{}[{}]", base, i);
        const auto& e = (*records)[i];
        auto text = [&](const char* key) {
            const auto& v = r.field(e, p, key);
            return v.is_number_integer() ? std::to_string(v.get<Index>()) : r.string(v, p + "." + key);
        };
        ResultRecord rec{text("dataset"), text("series"), text("method"), text("metric"),
                         r.number(r.field(e, p, "value"), p + ".value")};
        try {
            t.add(std::move(rec));
        } catch (const std::invalid_argument& ex) {
            r.fail(p, ex.what());
        }
    }
    return t;
}

json to_json(const ResultsTable& t) {
    json records = json::array();
    for (const auto& r : t.records())
        records.push_back({{"dataset", r.dataset}, {"series", r.series}, {"method", r.method}, {"metric", r.metric}, {"value", r.value}});
    json dirs = json::object();
    for (const auto& [m, d] : t.directions()) dirs[m] = d == Direction::lower_better ? "lower_better" : "higher_better";
    return {{"records", std::move(records)}, {"directions", std::move(dirs)}};
}

json to_json(const EvalReport& r) {
    auto rounded = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(round6(x));
        return a;
    };
    json matrix = json::array();
    for (Eigen::Index i = 0; i < r.matching.m_star.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < r.matching.m_star.cols(); ++j) row.push_back(r.matching.m_star(i, j));
        matrix.push_back(std::move(row));
    }
    json matches = json::array();
    for (const auto& m : r.matching.motif_matches)
        matches.push_back({{"gt_set", m.gt.set},
                           {"gt_motif", m.gt.motif},
                           {"disc_set", m.disc.set},
                           {"disc_motif", m.disc.motif},
                           {"overlap_rate", round6(m.rate.value())}});
    return {{"tp", r.tp},
            {"fn", r.fn},
            {"fp", r.fp},
            {"precision", round6(r.precision)},
            {"recall", round6(r.recall)},
            {"f1", round6(r.f1)},
            {"averaging", r.config.averaging == Averaging::micro ? "micro" : "macro"},
            {"or_threshold", r.config.or_threshold},
            {"penalize_off_target", r.config.penalize_off_target},
            {"per_set_precision", rounded(r.per_set_precision)},
            {"per_set_recall", rounded(r.per_set_recall)},
            {"per_set_f1", rounded(r.per_set_f1)},
            {"matching_matrix", std::move(matrix)},
            {"gt_order", r.matching.gt_order},
            {"disc_order", r.matching.disc_order},
            {"matched_pairs", r.matching.pairs},
            {"motif_matches", std::move(matches)}};
}

json to_json(const CorrectnessResult& r) {
    return {{"value", round6(r.value)}, {"variant", r.variant == CorrectnessVariant::m ? "m" : "g"},
            {"assignment", r.assignment.row_to_col}};
}

json to_json(const ScoreResult& r) {
    return {{"value", round6(r.value)}, {"penalize_unmatched_disc", r.penalize_unmatched_disc},
            {"assignment", r.assignment.row_to_col}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

MotifSetCollection read_motif_sets(const std::filesystem::path& path, CollectionKind kind) {
    const auto j = read_json_file(path);
    if (j.is_object() && j.contains("ground_truth") && !j.contains("motif_sets"))
        return Reader(path.string()).motif_sets(j["ground_truth"], kind, "ground_truth");
    return motif_sets_from_json(j, kind, path.string());
}

InstanceDataset import_ucr(const std::filesystem::path& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    InstanceDataset ds{name, 1, {}};
    std::map<std::string, std::size_t> class_of;
    std::string line;
    std::size_t lineno = 0, next_id = 0;
    std::optional<std::size_t> length;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& ch : line)
            if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
        std::istringstream ss(line);
        std::string label;
        if (!(ss >> label)) continue;
        std::vector<double> values;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(fmt::format("{}:{}", path.string(), lineno), "not a number: '" + tok + "'");
            }
            if (!std::isfinite(values.back()))
                throw ParseError(fmt::format("{}:{}", path.string(), lineno), "non-finite value (variable-length rows are not supported)");
        }
        if (values.empty()) throw ParseError(fmt::format("{}:{}", path.string(), lineno), "instance has no values");
        if (length && *length != values.size())
            throw ParseError(fmt::format("{}:{}", path.string(), lineno),
                             fmt::format("instance length {} differs from {}", values.size(), *length));
        length = values.size();
        // Numeric labels like "1.0000000e+00" normalise to "1".
        try {
            std::size_t used = 0;
            const double v = std::stod(label, &used);
            if (used == label.size() && v == std::floor(v)) label = fmt::format("{}", static_cast<long long>(v));
        } catch (const std::exception&) {
        }
        auto [it, fresh] = class_of.try_emplace(label, ds.classes.size());
        if (fresh) ds.classes.push_back({label, {}});
        ds.classes[it->second].instances.push_back({next_id++, TimeSeries::univariate(values)});
    }
    if (ds.classes.empty()) throw ParseError(path.string(), "no instances found");
    return ds;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

}  // namespace motifeval::io
