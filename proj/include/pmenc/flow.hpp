#pragma once

#include "pmenc/encode.hpp"
#include "pmenc/log.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pmenc {

// counts[i][j] = occurrences of alphabet[i] immediately followed by
// alphabet[j] within a case, summed over all cases.
struct DirectlyFollows {
    std::vector<std::string> alphabet; // sorted
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t count(std::string_view a, std::string_view b) const;
    std::uint64_t total() const;
};

// dep(a,b) = (|a>b| - |b>a|) / (|a>b| + |b>a| + 1) for a != b, antisymmetric
// in (-1,1); the diagonal uses the self-loop form |a>a| / (|a>a| + 1).
struct DependencyMatrix {
    std::vector<std::string> alphabet;
    std::vector<std::vector<double>> values;

    double at(std::string_view a, std::string_view b) const;
};

// Unordered activity pairs whose relative order varies freely across cases.
struct ConcurrencyRelation {
    std::set<std::pair<std::string, std::string>> pairs; // stored with first < second

    bool concurrent(std::string_view a, std::string_view b) const;
    void add(std::string a, std::string b);
    std::size_t degree(std::string_view a) const;
};

DirectlyFollows directly_follows(const EventLog& log);

DependencyMatrix dependency_matrix(const DirectlyFollows& df);

// {a,b} is concurrent iff both orders were observed and |dep(a,b)| stays
// under the threshold. Threshold must lie in [0,1).
ConcurrencyRelation concurrency_pairs(const DirectlyFollows& df, double threshold = 0.3);

// Canonical representative of the trace's equivalence class under adjacent
// swaps of concurrent activities: the lexicographically least member,
// computed greedily (front-movable letter with the smallest label first).
// Idempotent, and invariant under any single concurrent-adjacent swap of the
// input.
std::vector<std::string> canonicalize(const std::vector<std::string>& trace,
                                      const ConcurrencyRelation& rel);

// Trace transform hook for EncodingSpec.
TraceTransform canonical_transform(ConcurrencyRelation rel);

// Per-activity control-flow features, constant across cases:
//   parallelism(a) = |{b : {a,b} concurrent}| / (|A| - 1)
//   optionality(a) = 1 - cases containing a / total cases
// Requires at least two activities.
std::vector<std::pair<DimensionLabel, double>>
parallelism_features(const EventLog& log, const ConcurrencyRelation& rel);

// Serializations: matrix CSVs with alphabet headers, a pair list, and DOT
// with one edge per nonzero directly-follows count.
std::string dfg_to_csv(const DirectlyFollows& df);
std::string dependency_to_csv(const DependencyMatrix& dep);
std::string pairs_to_text(const ConcurrencyRelation& rel);
std::string dfg_to_dot(const DirectlyFollows& df);

} // namespace pmenc
