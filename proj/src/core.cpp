#include "motifeval/core.hpp"

#include <algorithm>
#include <string>

namespace motifeval {

std::size_t MotifSetCollection::motif_count() const noexcept {
    std::size_t n = 0;
    for (const auto& s : sets_) n += s.size();
    return n;
}

GroundTruthReport validate_ground_truth(const MotifSetCollection& collection) {
    struct Entry {
        Segment seg;
        MotifRef ref;
    };
    std::vector<Entry> entries;
    entries.reserve(collection.motif_count());
    for (std::size_t i = 0; i < collection.size(); ++i)
        for (std::size_t j = 0; j < collection[i].size(); ++j) entries.push_back({collection[i][j], {i, j}});

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.seg, a.ref) < std::tie(b.seg, b.ref);
    });

    // After sorting by start, every segment intersecting entries[i] from the right
    // starts no later than entries[i].end.
    GroundTruthReport report;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t k = i + 1; k < entries.size() && entries[k].seg.start() <= entries[i].seg.end(); ++k) {
            auto a = entries[i].ref;
            auto b = entries[k].ref;
            if (b < a) std::swap(a, b);
            report.violations.push_back({a, b});
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const OverlapViolation& x, const OverlapViolation& y) {
                  return std::tie(x.first, x.second) < std::tie(y.first, y.second);
              });
    return report;
}

void require_valid_ground_truth(const MotifSetCollection& collection) {
    const auto report = validate_ground_truth(collection);
    if (report.ok()) return;
    const auto& v = report.violations.front();
    const auto& a = collection[v.first.set][v.first.motif];
    const auto& b = collection[v.second.set][v.second.motif];
    throw GroundTruthOverlap("ground-truth segments overlap: set " + std::to_string(v.first.set) + " [" +
                             std::to_string(a.start()) + ":" + std::to_string(a.end()) + "] and set " +
                             std::to_string(v.second.set) + " [" + std::to_string(b.start()) + ":" +
                             std::to_string(b.end()) + "] (" + std::to_string(report.violations.size()) +
                             " violation(s))");
}

void EvalConfig::validate() const {
    if (!(or_threshold >= 0.5 && or_threshold < 1.0))
        throw std::invalid_argument("or_threshold must lie in [0.5, 1)");
}

}  // namespace motifeval
