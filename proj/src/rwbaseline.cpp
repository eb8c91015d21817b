#include "motifeval/rwbaseline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

namespace motifeval {

namespace {

// Asymptotic critical values, constant-only Dickey-Fuller regression.
constexpr std::array<std::pair<double, double>, 4> kCriticalValues{{
    {0.01, -3.43035},
    {0.025, -3.12},
    {0.05, -2.86154},
    {0.10, -2.56677},
}};

}  // namespace

MotifSetCollection RwBenchmarkSeries::per_class_ground_truth() const {
    std::map<std::string, std::vector<Segment>> by_label;
    std::vector<std::string> order;
    const auto& segs = inserted.empty() ? std::vector<Segment>{} : inserted[0].motifs();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto [it, fresh] = by_label.try_emplace(inserted_labels[i]);
        if (fresh) order.push_back(inserted_labels[i]);
        it->second.push_back(segs[i]);
    }
    std::vector<MotifSet> sets;
    for (const auto& label : order) sets.emplace_back(by_label[label], label);
    return MotifSetCollection::ground_truth(std::move(sets));
}

RwBenchmarkSeries generate_rw_series(const InstanceDataset& pool, std::uint64_t seed, const RwOptions& options) {
    if (pool.dimensions != 1) throw std::invalid_argument("random-walk series need a univariate pool");
    if (options.min_insertions > options.max_insertions) throw std::invalid_argument("min_insertions > max_insertions");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 1.0);

    const auto k = std::uniform_int_distribution<std::size_t>(options.min_insertions, options.max_insertions)(rng);

    struct Ref {
        std::size_t cls, inst;
    };
    std::vector<Ref> all;
    for (std::size_t c = 0; c < pool.classes.size(); ++c)
        for (std::size_t i = 0; i < pool.classes[c].instances.size(); ++i) all.push_back({c, i});
    if (all.size() < k)
        throw InsufficientInstances("pool has " + std::to_string(all.size()) + " instances, " + std::to_string(k) +
                                    " insertions requested");
    for (std::size_t i = 0; i < k; ++i)  // partial Fisher-Yates: first k are a uniform sample
        std::swap(all[i], all[std::uniform_int_distribution<std::size_t>(i, all.size() - 1)(rng)]);
    all.resize(k);

    Index occupied = 0;
    for (const auto& r : all) occupied += pool.classes[r.cls].instances[r.inst].values.length();
    const Index gaps = k > 0 ? static_cast<Index>(k - 1) * options.min_gap : 0;
    const Index free = options.length - occupied - gaps;
    if (free < 0)
        throw InsufficientSpace(std::to_string(k) + " insertions of total length " + std::to_string(occupied) +
                                " do not fit in a series of length " + std::to_string(options.length));

    // Uniform placement: k sorted cut points in [0, free] split the free walk samples.
    std::vector<Index> cuts(k);
    for (auto& c : cuts) c = std::uniform_int_distribution<Index>(0, free)(rng);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(options.length));
    double level = 0.0;
    auto walk = [&](Index steps) {
        for (Index s = 0; s < steps; ++s) {
            level += step(rng);
            values.push_back(level);
        }
    };

    RwBenchmarkSeries out;
    out.seed = seed;
    std::vector<Segment> segments;
    Index prev_cut = 0;
    for (std::size_t i = 0; i < k; ++i) {
        walk(cuts[i] - prev_cut + (i > 0 ? options.min_gap : 0));
        prev_cut = cuts[i];

        const auto& cls = pool.classes[all[i].cls];
        const auto x = cls.instances[all[i].inst].values.channel(0);
        const double mean = x.mean();
        const double sd = std::sqrt((x.array() - mean).square().mean());
        const double scale = sd > 0.0 ? 1.0 / sd : 1.0;
        const double first = (x(0) - mean) * scale;
        const Index start = static_cast<Index>(values.size());
        for (Index t = 0; t < x.size(); ++t) values.push_back(level + (x(t) - mean) * scale - first);
        level = values.back();
        segments.emplace_back(start, static_cast<Index>(values.size()) - 1);
        out.inserted_labels.push_back(cls.label);
    }
    walk(free - prev_cut);

    out.series = TimeSeries::univariate(values);
    std::vector<MotifSet> sets;
    if (!segments.empty()) sets.emplace_back(std::move(segments), "inserted");
    out.inserted = MotifSetCollection::ground_truth(std::move(sets));
    return out;
}

double df_critical_value(double alpha) {
    for (const auto& [a, cv] : kCriticalValues)
        if (std::abs(a - alpha) < 1e-12) return cv;
    throw std::invalid_argument("no Dickey-Fuller critical value tabulated for alpha = " + std::to_string(alpha));
}

DfTestResult dickey_fuller(std::span<const double> values, double alpha) {
    const double critical = df_critical_value(alpha);
    if (values.size() < 10) throw std::invalid_argument("Dickey-Fuller test needs at least 10 values");

    const Eigen::Map<const Eigen::ArrayXd> y(values.data(), static_cast<Eigen::Index>(values.size()));
    const Eigen::Index n = y.size() - 1;
    const Eigen::ArrayXd lag = y.head(n);
    const Eigen::ArrayXd dy = y.tail(n) - lag;

    const Eigen::ArrayXd xc = lag - lag.mean();
    const Eigen::ArrayXd yc = dy - dy.mean();
    const double sxx = xc.square().sum();
    const double scale = std::max(1.0, lag.abs().maxCoeff());
    if (!(sxx > 1e-20 * scale * scale * static_cast<double>(n))) throw DegenerateWindow("window has zero variance");

    const double gamma = (xc * yc).sum() / sxx;
    const double sse = (yc - gamma * xc).square().sum();
    const double tss = dy.square().sum();
    if (!(sse > 1e-24 * std::max(tss, 1e-300))) throw DegenerateWindow("window is fit exactly; t-ratio undefined");

    const double se = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    DfTestResult r;
    r.statistic = gamma / se;
    r.critical_value = critical;
    r.alpha = alpha;
    r.reject_h0 = r.statistic < critical;
    return r;
}

std::vector<bool> rw_mask(const TimeSeries& series, const RwSolverOptions& options) {
    if (series.dimensions() != 1) throw std::invalid_argument("rw_solver expects a univariate series");
    const Index n = series.length();
    const Index w = options.window;
    if (w < 11) throw std::invalid_argument("rw_solver window must be at least 11 samples");
    if (n < w) throw std::invalid_argument("series is shorter than the solver window");
    const Index stride = options.stride.value_or(std::max<Index>(1, w / 4));
    if (stride < 1) throw std::invalid_argument("stride must be positive");

    std::vector<Index> starts;
    for (Index s = 0; s + w <= n; s += stride) starts.push_back(s);
    if (starts.back() != n - w) starts.push_back(n - w);

    const Eigen::VectorXd x = series.channel(0);
    std::vector<double> diff(static_cast<std::size_t>(w - 1));
    // keep[t] > 0 iff some window covering t fails to reject (not random walk).
    std::vector<Index> keep(static_cast<std::size_t>(n) + 1, 0);
    for (const Index s : starts) {
        for (Index t = 0; t + 1 < w; ++t) diff[static_cast<std::size_t>(t)] = x(s + t + 1) - x(s + t);
        bool rejected = false;
        try {
            rejected = dickey_fuller(diff, options.alpha).reject_h0;
        } catch (const DegenerateWindow&) {
            rejected = false;
        }
        if (!rejected) {
            ++keep[static_cast<std::size_t>(s)];
            --keep[static_cast<std::size_t>(s + w)];
        }
    }
    std::vector<bool> mask(static_cast<std::size_t>(n));
    Index running = 0;
    for (Index t = 0; t < n; ++t) {
        running += keep[static_cast<std::size_t>(t)];
        mask[static_cast<std::size_t>(t)] = running == 0;
    }
    return mask;
}

MotifSetCollection rw_solver(const TimeSeries& series, const RwSolverOptions& options) {
    const auto mask = rw_mask(series, options);
    const Index min_len = options.min_len.value_or(options.window / 2);
    std::vector<Segment> motifs;
    const auto n = static_cast<Index>(mask.size());
    for (Index t = 0; t < n;) {
        if (mask[static_cast<std::size_t>(t)]) {
            ++t;
            continue;
        }
        Index e = t;
        while (e + 1 < n && !mask[static_cast<std::size_t>(e + 1)]) ++e;
        if (e - t + 1 >= min_len) motifs.emplace_back(t, e);
        t = e + 1;
    }
    std::vector<MotifSet> sets;
    if (!motifs.empty()) sets.emplace_back(std::move(motifs));
    return MotifSetCollection::discovered(std::move(sets));
}

}  // namespace motifeval
