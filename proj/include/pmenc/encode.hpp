#pragma once

#include "pmenc/log.hpp"
#include "pmenc/predicate.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace pmenc {

// Start padding for k-grams. Stored as a control character so it cannot
// collide with a real activity label; rendered as "^" in headers.
inline const std::string kgram_pad = "\x1e";

// Enumerator order is alphabetical on purpose: dimension sorting uses it.
enum class Stat { avg, count, max, min, sum };
enum class FlowMetric { optionality, parallelism };

const char* to_string(Stat s);
const char* to_string(FlowMetric m);

// ---------------------------------------------------------------------------
// Dimension labels. The variant order fixes the kind order of the index:
// categorical, k-gram, positional, statistic, flow.
// ---------------------------------------------------------------------------

// attr=value. `values` lists every raw value routed here; more than one entry
// means a user-declared merge of several categorical values.
struct CategoricalDim {
    std::string attribute;
    std::string label;
    std::vector<std::string> values;
    auto operator<=>(const CategoricalDim&) const = default;
};

struct KgramDim {
    std::vector<std::string> gram;
    auto operator<=>(const KgramDim&) const = default;
};

struct PositionalDim {
    std::string activity;
    int position = 1; // 1-based
    auto operator<=>(const PositionalDim&) const = default;
};

struct StatisticDim {
    std::string attribute;
    Stat stat = Stat::avg;
    auto operator<=>(const StatisticDim&) const = default;
};

struct FlowDim {
    std::string activity;
    FlowMetric metric = FlowMetric::optionality;
    auto operator<=>(const FlowDim&) const = default;
};

using DimensionLabel =
    std::variant<CategoricalDim, KgramDim, PositionalDim, StatisticDim, FlowDim>;

// Rendered header text: attr=value, a>b (with ^ for the pad), activity@pos,
// attr.stat, activity.metric.
std::string dim_text(const DimensionLabel& d);

struct DimensionIndex {
    std::vector<DimensionLabel> dims;

    std::size_t size() const { return dims.size(); }
    bool empty() const { return dims.empty(); }
};

// ---------------------------------------------------------------------------
// Encoding specification: the four stages as data.
// ---------------------------------------------------------------------------

struct CategoricalRule {
    std::vector<std::string> attributes;
};

struct KgramRule {
    int k = 2;
};

struct PositionalRule {
    int max_positions = 0; // 0: derive the 95th-percentile trace length
};

struct NumStatsRule {
    std::vector<std::string> attributes;
    std::vector<Stat> stats;
};

using DimensioningRule =
    std::variant<CategoricalRule, KgramRule, PositionalRule, NumStatsRule>;

// Routes several raw categorical values into one dimension.
struct MergeGroup {
    std::string attribute;
    std::string label;
    std::vector<std::string> values;
};

struct Valuation {
    enum class Kind { presence, count, avg, max, min, sum, positional_indicator };
    Kind kind = Kind::count;
    double empty_cell_value = 0.0;
};

// Optional rewrite of a case's activity sequence before grams/positions are
// taken; the flow module supplies one that canonicalizes concurrent activity
// orderings.
using TraceTransform = std::function<std::vector<std::string>(const std::vector<std::string>&)>;

struct EncodingSpec {
    std::string name;
    FilterPredicate filter;
    DimensioningRule rule;
    std::vector<MergeGroup> merges;
    Valuation valuation;
    TraceTransform trace_transform; // empty = identity
};

// ---------------------------------------------------------------------------
// Intermediate and final products.
// ---------------------------------------------------------------------------

// One row per surviving case; only non-empty cells are stored, a missing
// entry is the absent cell. Cell contents keep event order within the case.
struct GroupedRow {
    std::string case_id;
    std::map<std::size_t, std::vector<AttributeValue>> cells; // dim index -> values
    std::size_t case_events = 0; // events of this case in the grouped log
};

struct GroupedTable {
    DimensionIndex dims;
    std::vector<GroupedRow> rows; // sorted by case_id
};

struct FeatureMatrix {
    std::vector<std::string> row_labels; // case ids, sorted
    DimensionIndex columns;
    std::vector<double> values; // row-major

    std::size_t rows() const { return row_labels.size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * columns.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * columns.size() + j]; }
};

// ---------------------------------------------------------------------------
// The four stages, plus their fused composition.
// ---------------------------------------------------------------------------

// Keeps events satisfying every term; cases left empty are dropped and the
// alphabet is recomputed from the survivors.
EventLog apply_filter(const EventLog& log, const FilterPredicate& p);

// Deterministic dimension vocabulary for the (already filtered) log:
// sorted within kind, kinds in variant order.
DimensionIndex build_dimensions(const EventLog& log, const EncodingSpec& spec);

// Groups contributions by case against a fixed dimension index.
GroupedTable group_by_case(const EventLog& log, const DimensionIndex& dims,
                           const EncodingSpec& spec);

// Collapses cell multisets to scalars. Statistic dimensions reduce by the
// stat named in their own label; every other kind uses `v.kind`. Empty cells
// become `v.empty_cell_value`.
FeatureMatrix valuate(const GroupedTable& table, const Valuation& v);

// Equivalent to valuate(group_by_case(apply_filter(log), dims), v).
FeatureMatrix apply_encoding(const EventLog& log, const EncodingSpec& spec);

// Encodes against a frozen vocabulary (e.g. from a training log). Values
// outside the vocabulary either vanish or, when `map_unseen_to_other` is set,
// land in one reserved attr=<other> dimension per categorical attribute.
FeatureMatrix apply_encoding(const EventLog& log, const EncodingSpec& spec,
                             const DimensionIndex& frozen, bool map_unseen_to_other);

// Appends case-constant columns (flow features) to a matrix. Labels must
// sort after the existing columns, which holds for flow dimensions.
FeatureMatrix append_constant_columns(FeatureMatrix m,
                                      const std::vector<std::pair<DimensionLabel, double>>& cols);

// ---------------------------------------------------------------------------
// Built-in encoders.
// ---------------------------------------------------------------------------

EncodingSpec one_hot(std::vector<std::string> attributes = {"activity"});
EncodingSpec activity_profile();
EncodingSpec kgram(int k);                    // k >= 1, else ConfigError
EncodingSpec positional(int max_positions);   // >= 1, else ConfigError
EncodingSpec positional_p95();                // derive max from the log
EncodingSpec numeric_stats(std::vector<std::string> attributes, std::vector<Stat> stats);

// Concrete catalog used by the property suites.
std::vector<EncodingSpec> builtin_specs();

// CLI encoder syntax:
//   one-hot | activity-profile | kgram:k=<n> | positional:max=<n>
//   | numstats:attrs=<a;b>;stats=<avg,sum,...>
EncodingSpec parse_encoder_spec(std::string_view text);

// First column case_id, then one header per dimension; numbers rendered as
// the shortest round-tripping decimal.
std::string matrix_to_csv(const FeatureMatrix& m);

} // namespace pmenc
