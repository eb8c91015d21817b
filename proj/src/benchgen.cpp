#include "motifeval/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "motifeval/parallel.hpp"

namespace motifeval {

namespace {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    // Fisher-Yates with our own index draws so the permutation only depends on the engine.
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, 0, i - 1)]);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

}  // namespace

std::size_t InstanceDataset::instance_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.instances.size();
    return n;
}

void InstanceDataset::validate() const {
    if (classes.empty()) throw std::invalid_argument("dataset '" + name + "' has no classes");
    if (dimensions < 1) throw std::invalid_argument("dataset '" + name + "' has non-positive dimensions");
    std::set<std::size_t> ids;
    for (const auto& c : classes) {
        if (c.instances.empty()) throw std::invalid_argument("class '" + c.label + "' has no instances");
        for (const auto& inst : c.instances) {
            if (inst.values.dimensions() != dimensions)
                throw std::invalid_argument("instance " + std::to_string(inst.id) + " of class '" + c.label +
                                            "' has " + std::to_string(inst.values.dimensions()) +
                                            " dimensions, expected " + std::to_string(dimensions));
            if (!ids.insert(inst.id).second)
                throw std::invalid_argument("duplicate instance id " + std::to_string(inst.id));
        }
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view split, std::uint64_t index) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : split) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(seed ^ splitmix64(h)) + index);
}

BenchmarkSeries generate_series(const InstanceDataset& pool, std::uint64_t seed, const GenerationConstraints& constraints) {
    const std::size_t c = pool.class_count();
    if (c < 2) throw InsufficientClasses("need at least 2 classes, dataset '" + pool.name + "' has " + std::to_string(c));
    const std::size_t gm = g_max(c);
    Rng rng(seed);

    std::size_t g = 0;
    if (!constraints.cardinalities.empty())
        g = constraints.cardinalities.size();
    else if (constraints.num_sets)
        g = *constraints.num_sets;
    else
        g = uniform_index(rng, 1, gm);
    if (g < 1 || g > gm)
        throw InsufficientClasses("requested " + std::to_string(g) + " motif sets, but " + std::to_string(c) +
                                  " classes allow at most " + std::to_string(gm));

    // Motif classes need two distinct instances.
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < c; ++i)
        if (pool.classes[i].instances.size() >= 2) eligible.push_back(i);
    if (eligible.size() < g)
        throw InsufficientInstances("only " + std::to_string(eligible.size()) + " classes of '" + pool.name +
                                    "' have two or more instances, " + std::to_string(g) + " needed");
    shuffle(eligible, rng);
    const std::vector<std::size_t> motif_classes(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(g));
    auto pool_size = [&](std::size_t set) { return pool.classes[motif_classes[set]].instances.size(); };

    // Fillers: sum(k) - 1 distinct classes out of the c - g non-motif ones.
    const std::size_t filler_budget = c - g;
    std::vector<std::size_t> k;
    if (!constraints.cardinalities.empty()) {
        k = constraints.cardinalities;
        for (auto ki : k)
            if (ki < 2) throw std::invalid_argument("motif set cardinality must be at least 2");
    } else {
        k.assign(g, 2);
        std::bernoulli_distribution stop(0.5);
        for (;;) {
            const std::size_t total = std::accumulate(k.begin(), k.end(), std::size_t{0});
            std::vector<std::size_t> candidates;
            if (total <= filler_budget)  // one more motif needs one more filler
                for (std::size_t i = 0; i < g; ++i)
                    if (k[i] < constraints.max_cardinality && k[i] < pool_size(i)) candidates.push_back(i);
            if (candidates.empty() || stop(rng)) break;
            ++k[candidates[uniform_index(rng, 0, candidates.size() - 1)]];
        }
    }
    const std::size_t motif_total = std::accumulate(k.begin(), k.end(), std::size_t{0});
    if (motif_total - 1 > filler_budget)
        throw InsufficientClasses(std::to_string(motif_total) + " motifs need " + std::to_string(motif_total - 1) +
                                  " filler classes, only " + std::to_string(filler_budget) + " available");
    for (std::size_t i = 0; i < g; ++i)
        if (k[i] > pool_size(i))
            throw InsufficientInstances("class '" + pool.classes[motif_classes[i]].label + "' has " +
                                        std::to_string(pool_size(i)) + " instances, " + std::to_string(k[i]) +
                                        " requested");

    struct Pick {
        std::size_t set;  // motif set index, or npos for fillers
        std::size_t class_index;
        std::size_t instance;
    };
    constexpr auto npos = static_cast<std::size_t>(-1);

    std::vector<Pick> motifs;
    for (std::size_t i = 0; i < g; ++i) {
        auto order = iota_vec(pool_size(i));
        shuffle(order, rng);
        for (std::size_t j = 0; j < k[i]; ++j) motifs.push_back({i, motif_classes[i], order[j]});
    }
    shuffle(motifs, rng);

    std::vector<std::size_t> filler_classes;
    for (std::size_t i = 0; i < c; ++i)
        if (std::find(motif_classes.begin(), motif_classes.end(), i) == motif_classes.end()) filler_classes.push_back(i);
    shuffle(filler_classes, rng);
    filler_classes.resize(motif_total - 1);

    std::vector<Pick> sequence;
    for (std::size_t m = 0; m < motifs.size(); ++m) {
        if (m > 0) {
            const std::size_t fc = filler_classes[m - 1];
            sequence.push_back({npos, fc, uniform_index(rng, 0, pool.classes[fc].instances.size() - 1)});
        }
        sequence.push_back(motifs[m]);
    }

    BenchmarkSeries out;
    out.provenance = {pool.name, "", seed, 0};
    Index n = 0;
    for (const auto& p : sequence) n += pool.classes[p.class_index].instances[p.instance].values.length();

    TimeSeries::Matrix values(n, pool.dimensions);
    std::vector<std::vector<Segment>> gt_segments(g);
    Index offset = 0;
    for (const auto& p : sequence) {
        const auto& inst = pool.classes[p.class_index].instances[p.instance];
        const Index len = inst.values.length();
        values.middleRows(offset, len) = inst.values.values();
        const Segment seg(offset, offset + len - 1);
        out.layout.push_back({seg, p.class_index, inst.id, p.set != npos});
        if (p.set != npos)
            gt_segments[p.set].push_back(seg);
        else
            out.fillers.push_back({seg, pool.classes[p.class_index].label});
        offset += len;
    }
    out.series = TimeSeries(std::move(values));

    std::vector<MotifSet> sets;
    for (std::size_t i = 0; i < g; ++i) sets.emplace_back(std::move(gt_segments[i]), pool.classes[motif_classes[i]].label);
    out.ground_truth = MotifSetCollection::ground_truth(std::move(sets));
    return out;
}

std::pair<InstanceDataset, InstanceDataset> split_dataset(const InstanceDataset& pool, double validation_ratio,
                                                          std::uint64_t seed) {
    if (!(validation_ratio > 0.0 && validation_ratio < 1.0))
        throw std::invalid_argument("validation ratio must lie in (0, 1)");
    Rng rng(seed);
    InstanceDataset val{pool.name, pool.dimensions, {}};
    InstanceDataset test{pool.name, pool.dimensions, {}};
    for (const auto& cls : pool.classes) {
        const std::size_t n = cls.instances.size();
        if (n < 2)
            throw InsufficientInstances("class '" + cls.label + "' has " + std::to_string(n) +
                                        " instance(s); a split needs at least 2");
        auto order = iota_vec(n);
        shuffle(order, rng);
        const auto wanted = static_cast<std::size_t>(std::llround(validation_ratio * static_cast<double>(n)));
        const std::size_t n_val = std::clamp<std::size_t>(wanted, 1, n - 1);
        std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());

        InstanceClass v{cls.label, {}}, t{cls.label, {}};
        for (std::size_t i = 0; i < n; ++i) (i < n_val ? v : t).instances.push_back(cls.instances[order[i]]);
        val.classes.push_back(std::move(v));
        test.classes.push_back(std::move(t));
    }
    return {std::move(val), std::move(test)};
}

Benchmark generate_benchmark(const InstanceDataset& pool, std::uint64_t seed, const BenchmarkOptions& options) {
    pool.validate();
    Benchmark b;
    std::tie(b.validation_pool, b.test_pool) = split_dataset(pool, options.validation_ratio, derive_seed(seed, "split", 0));

    auto fill = [&](const InstanceDataset& from, std::string_view split, std::size_t count) {
        std::vector<std::optional<BenchmarkSeries>> slots(count);
        parallel_for(count, [&](std::size_t i) {
            const auto sub = derive_seed(seed, split, i);
            auto s = generate_series(from, sub, options.constraints);
            s.provenance = {pool.name, std::string(split), sub, i};
            slots[i] = std::move(s);
        });
        std::vector<BenchmarkSeries> out;
        out.reserve(count);
        for (auto& s : slots) out.push_back(std::move(*s));
        return out;
    };
    b.validation = fill(b.validation_pool, "validation", options.n_validation);
    b.test = fill(b.test_pool, "test", options.n_test);
    return b;
}

TimeSeries reconstruct_series(const BenchmarkSeries& series, const InstanceDataset& pool) {
    Index n = 0;
    for (const auto& e : series.layout) n += e.segment.length();
    TimeSeries::Matrix values(n, pool.dimensions);
    for (const auto& e : series.layout) {
        const auto& instances = pool.classes.at(e.class_index).instances;
        const auto it = std::find_if(instances.begin(), instances.end(), [&](const Instance& x) { return x.id == e.instance_id; });
        if (it == instances.end()) throw std::invalid_argument("instance " + std::to_string(e.instance_id) + " not in pool");
        values.middleRows(e.segment.start(), e.segment.length()) = it->values.values();
    }
    return TimeSeries(std::move(values));
}

namespace {

/// Gaussian noise low-pass filtered by two centred moving averages of width ~len/32, then
/// rescaled to standard deviation `sigma`. Keeps instances smooth, as in real shape datasets.
Eigen::VectorXd smooth_noise(Index len, double sigma, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(len);
    for (Index t = 0; t < len; ++t) v(t) = gauss(rng);
    if (sigma == 0.0) return Eigen::VectorXd::Zero(len);
    const Index half = std::max<Index>(1, len / 64);
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd out(len);
        for (Index t = 0; t < len; ++t) {
            const Index lo = std::max<Index>(0, t - half), hi = std::min<Index>(len - 1, t + half);
            out(t) = v.segment(lo, hi - lo + 1).mean();
        }
        v = out;
    }
    const double sd = std::sqrt((v.array() - v.mean()).square().mean());
    return sd > 0 ? Eigen::VectorXd(v * (sigma / sd)) : Eigen::VectorXd::Zero(len);
}

}  // namespace

InstanceDataset synthetic_pool(const SyntheticPoolOptions& options, std::uint64_t seed) {
    if (options.classes < 1 || options.instances_per_class < 1 || options.length < 2 || options.dimensions < 1)
        throw std::invalid_argument("synthetic pool needs classes, instances, length >= 2 and dimensions");
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index len = options.length;
    const double L = static_cast<double>(len);

    InstanceDataset ds{options.name, options.dimensions, {}};
    std::size_t next_id = 0;
    for (std::size_t c = 0; c < options.classes; ++c) {
        // Class prototype: a low-frequency sine plus three Gaussian bumps per dimension.
        Eigen::MatrixXd proto(len, options.dimensions);
        for (Index d = 0; d < options.dimensions; ++d) {
            const double freq = 0.5 + 2.5 * unit(rng);
            const double phase = 2.0 * std::numbers::pi * unit(rng);
            const double sine_amp = 0.5 + unit(rng);
            double centers[3], widths[3], amps[3];
            for (int b = 0; b < 3; ++b) {
                centers[b] = (0.1 + 0.8 * unit(rng)) * L;
                widths[b] = (0.03 + 0.12 * unit(rng)) * L;
                amps[b] = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * unit(rng));
            }
            for (Index t = 0; t < len; ++t) {
                const double x = static_cast<double>(t);
                double v = sine_amp * std::sin(2.0 * std::numbers::pi * freq * x / L + phase);
                for (int b = 0; b < 3; ++b) v += amps[b] * std::exp(-0.5 * std::pow((x - centers[b]) / widths[b], 2));
                proto(t, d) = v;
            }
        }
        InstanceClass cls{"class_" + std::to_string(c), {}};
        for (std::size_t i = 0; i < options.instances_per_class; ++i) {
            const double scale = 1.0 + 0.05 * gauss(rng);
            TimeSeries::Matrix m = scale * proto;
            for (Index d = 0; d < options.dimensions; ++d) m.col(d) += smooth_noise(len, options.noise, rng);
            cls.instances.push_back({next_id++, TimeSeries(std::move(m))});
        }
        ds.classes.push_back(std::move(cls));
    }
    return ds;
}

}  // namespace motifeval
