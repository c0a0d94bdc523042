#include "pmenc/encode.hpp"
#include "pmenc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace pmenc {

const char* to_string(Stat s) {
    switch (s) {
        case Stat::avg: return "avg";
        case Stat::count: return "count";
        case Stat::max: return "max";
        case Stat::min: return "min";
        case Stat::sum: return "sum";
    }
    return "?";
}

const char* to_string(FlowMetric m) {
    return m == FlowMetric::optionality ? "optionality" : "parallelism";
}

namespace {

std::string render_gram(const std::vector<std::string>& gram) {
    std::string out;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (i) out += '>';
        out += gram[i] == kgram_pad ? "^" : gram[i];
    }
    return out;
}

} // namespace

std::string dim_text(const DimensionLabel& d) {
    struct Visitor {
        std::string operator()(const CategoricalDim& c) const { return c.attribute + "=" + c.label; }
        std::string operator()(const KgramDim& k) const { return render_gram(k.gram); }
        std::string operator()(const PositionalDim& p) const {
            return p.activity + "@" + std::to_string(p.position);
        }
        std::string operator()(const StatisticDim& s) const {
            return s.attribute + "." + to_string(s.stat);
        }
        std::string operator()(const FlowDim& f) const {
            return f.activity + "." + to_string(f.metric);
        }
    };
    return std::visit(Visitor{}, d);
}

// ---------------------------------------------------------------------------
// pi
// ---------------------------------------------------------------------------

EventLog apply_filter(const EventLog& log, const FilterPredicate& p) {
    if (p.always_true()) return log;
    std::vector<Case> kept;
    for (const Case& c : log.cases()) {
        Case out{c.id, {}};
        for (const Event& e : c.events)
            if (matches(e, p)) out.events.push_back(e);
        if (!out.events.empty()) kept.push_back(std::move(out));
    }
    return EventLog::from_cases(std::move(kept));
}

// ---------------------------------------------------------------------------
// rho
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> case_trace(const Case& c, const EncodingSpec& spec) {
    std::vector<std::string> t = c.trace();
    if (spec.trace_transform) t = spec.trace_transform(t);
    return t;
}

std::vector<std::vector<std::string>> padded_grams(const std::vector<std::string>& trace, int k) {
    std::vector<std::vector<std::string>> grams;
    if (trace.empty() || k < 1) return grams;
    std::vector<std::string> padded(static_cast<std::size_t>(k - 1), kgram_pad);
    padded.insert(padded.end(), trace.begin(), trace.end());
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= padded.size(); ++i)
        grams.emplace_back(padded.begin() + static_cast<std::ptrdiff_t>(i),
                           padded.begin() + static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(k)));
    return grams;
}

int percentile95_length(const EventLog& log) {
    std::vector<std::size_t> lengths;
    for (const Case& c : log.cases()) {
        std::size_t n = c.trace().size();
        if (n > 0) lengths.push_back(n);
    }
    if (lengths.empty()) return 0;
    std::sort(lengths.begin(), lengths.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(lengths.size())));
    rank = std::clamp<std::size_t>(rank, 1, lengths.size());
    return static_cast<int>(lengths[rank - 1]);
}

void build_categorical(const EventLog& log, const std::vector<std::string>& attributes,
                       const std::vector<MergeGroup>& merges, std::vector<DimensionLabel>& out) {
    for (const std::string& attr : attributes) {
        std::map<std::string, const MergeGroup*> merged_value; // raw value -> group
        for (const MergeGroup& g : merges)
            if (g.attribute == attr)
                for (const std::string& v : g.values) merged_value.emplace(v, &g);

        std::set<std::string> singles;
        std::set<const MergeGroup*> groups;
        for (const Case& c : log.cases()) {
            for (const Event& e : c.events) {
                const AttributeValue& v = e.attribute(attr);
                if (v.is_absent()) continue;
                std::string text = v.render();
                auto it = merged_value.find(text);
                if (it != merged_value.end())
                    groups.insert(it->second);
                else
                    singles.insert(std::move(text));
            }
        }
        for (const std::string& v : singles)
            out.push_back(CategoricalDim{attr, v, {v}});
        for (const MergeGroup* g : groups)
            out.push_back(CategoricalDim{attr, g->label, g->values});
    }
}

} // namespace

DimensionIndex build_dimensions(const EventLog& log, const EncodingSpec& spec) {
    std::vector<DimensionLabel> dims;

    if (const auto* cat = std::get_if<CategoricalRule>(&spec.rule)) {
        build_categorical(log, cat->attributes, spec.merges, dims);
    } else if (const auto* kg = std::get_if<KgramRule>(&spec.rule)) {
        std::set<std::vector<std::string>> grams;
        for (const Case& c : log.cases())
            for (auto& g : padded_grams(case_trace(c, spec), kg->k)) grams.insert(std::move(g));
        for (const auto& g : grams) dims.push_back(KgramDim{g});
    } else if (const auto* ps = std::get_if<PositionalRule>(&spec.rule)) {
        int max_pos = ps->max_positions > 0 ? ps->max_positions : percentile95_length(log);
        for (const std::string& a : log.activity_alphabet())
            for (int p = 1; p <= max_pos; ++p) dims.push_back(PositionalDim{a, p});
    } else if (const auto* ns = std::get_if<NumStatsRule>(&spec.rule)) {
        for (const std::string& attr : ns->attributes) {
            std::vector<Stat> stats = ns->stats;
            std::sort(stats.begin(), stats.end());
            stats.erase(std::unique(stats.begin(), stats.end()), stats.end());
            for (Stat s : stats) dims.push_back(StatisticDim{attr, s});
        }
    }

    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return DimensionIndex{std::move(dims)};
}

// ---------------------------------------------------------------------------
// eta
// ---------------------------------------------------------------------------

namespace {

// Routing tables derived from a dimension index.
struct Router {
    // attribute -> rendered value -> dim
    std::map<std::string, std::map<std::string, std::size_t>> categorical;
    // attribute -> dim of its reserved <other> column, when present
    std::map<std::string, std::size_t> other;
    std::map<std::vector<std::string>, std::size_t> grams;
    std::set<std::size_t> gram_lengths;
    std::map<std::pair<std::string, int>, std::size_t> positions;
    int max_position = 0;
    std::map<std::string, std::vector<std::size_t>> stat_dims;

    explicit Router(const DimensionIndex& dims) {
        for (std::size_t j = 0; j < dims.dims.size(); ++j) {
            const DimensionLabel& d = dims.dims[j];
            if (const auto* c = std::get_if<CategoricalDim>(&d)) {
                if (c->values.empty()) {
                    other.emplace(c->attribute, j);
                } else {
                    auto& by_value = categorical[c->attribute];
                    for (const std::string& v : c->values) by_value.emplace(v, j);
                }
            } else if (const auto* k = std::get_if<KgramDim>(&d)) {
                grams.emplace(k->gram, j);
                gram_lengths.insert(k->gram.size());
            } else if (const auto* p = std::get_if<PositionalDim>(&d)) {
                positions.emplace(std::make_pair(p->activity, p->position), j);
                max_position = std::max(max_position, p->position);
            } else if (const auto* s = std::get_if<StatisticDim>(&d)) {
                stat_dims[s->attribute].push_back(j);
            }
        }
    }
};

} // namespace

GroupedTable group_by_case(const EventLog& log, const DimensionIndex& dims,
                           const EncodingSpec& spec) {
    Router route(dims);
    GroupedTable table;
    table.dims = dims;
    table.rows.reserve(log.case_count());

    for (const Case& c : log.cases()) {
        GroupedRow row;
        row.case_id = c.id;
        row.case_events = c.events.size();

        for (const Event& e : c.events) {
            for (const auto& [attr, by_value] : route.categorical) {
                const AttributeValue& v = e.attribute(attr);
                if (v.is_absent()) continue;
                auto it = by_value.find(v.render());
                if (it != by_value.end()) {
                    row.cells[it->second].push_back(v);
                } else if (auto ot = route.other.find(attr); ot != route.other.end()) {
                    row.cells[ot->second].push_back(v);
                }
            }
            // An <other> column whose attribute has no regular dims at all.
            for (const auto& [attr, j] : route.other) {
                if (route.categorical.count(attr)) continue;
                const AttributeValue& v = e.attribute(attr);
                if (!v.is_absent()) row.cells[j].push_back(v);
            }
            for (const auto& [attr, js] : route.stat_dims) {
                const AttributeValue& v = e.attribute(attr);
                if (v.is_absent()) continue;
                for (std::size_t j : js) row.cells[j].push_back(v);
            }
        }

        if (!route.grams.empty() || !route.positions.empty()) {
            std::vector<std::string> trace = case_trace(c, spec);
            for (std::size_t k : route.gram_lengths) {
                for (auto& g : padded_grams(trace, static_cast<int>(k))) {
                    auto it = route.grams.find(g);
                    if (it != route.grams.end())
                        row.cells[it->second].push_back(AttributeValue(render_gram(g)));
                }
            }
            for (std::size_t p = 1; p <= trace.size() && static_cast<int>(p) <= route.max_position;
                 ++p) {
                auto it = route.positions.find({trace[p - 1], static_cast<int>(p)});
                if (it != route.positions.end())
                    row.cells[it->second].push_back(AttributeValue(trace[p - 1]));
            }
        }

        table.rows.push_back(std::move(row));
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const GroupedRow& a, const GroupedRow& b) { return a.case_id < b.case_id; });
    return table;
}

// ---------------------------------------------------------------------------
// nu
// ---------------------------------------------------------------------------

namespace {

double numeric_reduce(const std::vector<AttributeValue>& cell, Stat stat,
                      const std::string& dim_name) {
    if (stat == Stat::count) return static_cast<double>(cell.size());
    double sum = 0, mx = 0, mn = 0;
    bool first = true;
    for (const AttributeValue& v : cell) {
        if (!v.is_numeric())
            throw DataError("valuation of '" + dim_name + "': non-numeric value '" + v.render() +
                            "'");
        double x = v.as_number();
        sum += x;
        mx = first ? x : std::max(mx, x);
        mn = first ? x : std::min(mn, x);
        first = false;
    }
    switch (stat) {
        case Stat::avg: return sum / static_cast<double>(cell.size());
        case Stat::max: return mx;
        case Stat::min: return mn;
        case Stat::sum: return sum;
        default: return 0;
    }
}

Stat stat_of(Valuation::Kind k) {
    switch (k) {
        case Valuation::Kind::avg: return Stat::avg;
        case Valuation::Kind::max: return Stat::max;
        case Valuation::Kind::min: return Stat::min;
        case Valuation::Kind::sum: return Stat::sum;
        default: return Stat::count;
    }
}

} // namespace

FeatureMatrix valuate(const GroupedTable& table, const Valuation& v) {
    FeatureMatrix m;
    m.columns = table.dims;
    m.row_labels.reserve(table.rows.size());
    m.values.assign(table.rows.size() * table.dims.size(), v.empty_cell_value);

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const GroupedRow& row = table.rows[i];
        m.row_labels.push_back(row.case_id);
        for (const auto& [j, cell] : row.cells) {
            if (cell.empty()) continue;
            const DimensionLabel& dim = table.dims.dims[j];
            double out;
            if (const auto* s = std::get_if<StatisticDim>(&dim)) {
                // statistic dimensions reduce by their own label
                out = numeric_reduce(cell, s->stat, dim_text(dim));
            } else if (std::holds_alternative<PositionalDim>(dim)) {
                out = 1.0;
            } else {
                switch (v.kind) {
                    case Valuation::Kind::presence:
                    case Valuation::Kind::positional_indicator: out = 1.0; break;
                    case Valuation::Kind::count: out = static_cast<double>(cell.size()); break;
                    default: out = numeric_reduce(cell, stat_of(v.kind), dim_text(dim));
                }
            }
            m.values[i * table.dims.size() + j] = out;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

FeatureMatrix apply_encoding(const EventLog& log, const EncodingSpec& spec) {
    EventLog filtered = apply_filter(log, spec.filter);
    DimensionIndex dims = build_dimensions(filtered, spec);
    return valuate(group_by_case(filtered, dims, spec), spec.valuation);
}

FeatureMatrix apply_encoding(const EventLog& log, const EncodingSpec& spec,
                             const DimensionIndex& frozen, bool map_unseen_to_other) {
    EventLog filtered = apply_filter(log, spec.filter);
    DimensionIndex dims = frozen;
    if (map_unseen_to_other) {
        std::set<std::string> attrs;
        for (const DimensionLabel& d : dims.dims)
            if (const auto* c = std::get_if<CategoricalDim>(&d))
                if (!c->values.empty()) attrs.insert(c->attribute);
        for (const std::string& a : attrs)
            dims.dims.push_back(CategoricalDim{a, "<other>", {}});
        std::sort(dims.dims.begin(), dims.dims.end());
        dims.dims.erase(std::unique(dims.dims.begin(), dims.dims.end()), dims.dims.end());
    }
    return valuate(group_by_case(filtered, dims, spec), spec.valuation);
}

FeatureMatrix append_constant_columns(
    FeatureMatrix m, const std::vector<std::pair<DimensionLabel, double>>& cols) {
    if (cols.empty()) return m;
    std::size_t n = m.rows(), d = m.cols();
    std::vector<double> values;
    values.reserve(n * (d + cols.size()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) values.push_back(m.values[i * d + j]);
        for (const auto& [label, v] : cols) values.push_back(v);
    }
    for (const auto& [label, v] : cols) m.columns.dims.push_back(label);
    m.values = std::move(values);
    return m;
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

EncodingSpec one_hot(std::vector<std::string> attributes) {
    EncodingSpec s;
    s.name = "one-hot";
    s.rule = CategoricalRule{std::move(attributes)};
    s.valuation = {Valuation::Kind::presence, 0.0};
    return s;
}

EncodingSpec activity_profile() {
    EncodingSpec s;
    s.name = "activity-profile";
    s.filter = parse_predicate("activity != null");
    s.rule = CategoricalRule{{"activity"}};
    s.valuation = {Valuation::Kind::count, 0.0};
    return s;
}

EncodingSpec kgram(int k) {
    if (k < 1) throw ConfigError("k must be \xe2\x89\xa5 1");
    EncodingSpec s;
    s.name = "kgram:k=" + std::to_string(k);
    s.filter = parse_predicate("activity != null");
    s.rule = KgramRule{k};
    s.valuation = {Valuation::Kind::count, 0.0};
    return s;
}

EncodingSpec positional(int max_positions) {
    if (max_positions < 1) throw ConfigError("max_positions must be \xe2\x89\xa5 1");
    EncodingSpec s = positional_p95();
    s.name = "positional:max=" + std::to_string(max_positions);
    s.rule = PositionalRule{max_positions};
    return s;
}

EncodingSpec positional_p95() {
    EncodingSpec s;
    s.name = "positional";
    s.filter = parse_predicate("activity != null");
    s.rule = PositionalRule{0};
    s.valuation = {Valuation::Kind::positional_indicator, 0.0};
    return s;
}

EncodingSpec numeric_stats(std::vector<std::string> attributes, std::vector<Stat> stats) {
    if (attributes.empty()) throw ConfigError("numstats needs at least one attribute");
    if (stats.empty()) throw ConfigError("numstats needs at least one statistic");
    EncodingSpec s;
    s.name = "numstats";
    s.rule = NumStatsRule{std::move(attributes), std::move(stats)};
    s.valuation = {Valuation::Kind::sum, 0.0};
    return s;
}

std::vector<EncodingSpec> builtin_specs() {
    return {one_hot(),      activity_profile(),           kgram(1),
            kgram(2),       kgram(3),                     positional_p95(),
            positional(8),  numeric_stats({"cost"}, {Stat::avg, Stat::sum})};
}

// ---------------------------------------------------------------------------
// Encoder spec strings (CLI surface)
// ---------------------------------------------------------------------------

namespace {

Stat parse_stat(const std::string& w) {
    if (w == "avg") return Stat::avg;
    if (w == "count") return Stat::count;
    if (w == "max") return Stat::max;
    if (w == "min") return Stat::min;
    if (w == "sum") return Stat::sum;
    throw ConfigError("unknown statistic '" + w + "' (expected avg, count, max, min or sum)");
}

int parse_int_param(const std::string& key, const std::string& value) {
    int v = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError("bad value for " + key + ": '" + value + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

} // namespace

EncodingSpec parse_encoder_spec(std::string_view text) {
    std::string t(text);
    std::string name = t, params;
    if (auto colon = t.find(':'); colon != std::string::npos) {
        name = t.substr(0, colon);
        params = t.substr(colon + 1);
    }

    // key=value pairs separated by ';'; a token without '=' continues the
    // previous key's list (so attrs=a;b parses as attrs=[a,b]).
    std::map<std::string, std::vector<std::string>> kv;
    std::string current;
    for (const std::string& tok : split(params, ';')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq != std::string::npos) {
            current = tok.substr(0, eq);
            kv[current].push_back(tok.substr(eq + 1));
        } else if (!current.empty()) {
            kv[current].push_back(tok);
        } else {
            throw ConfigError("bad encoder parameter '" + tok + "' in '" + t + "'");
        }
    }

    if (name == "one-hot") {
        std::vector<std::string> attrs = {"activity"};
        if (auto it = kv.find("attrs"); it != kv.end()) attrs = it->second;
        return one_hot(std::move(attrs));
    }
    if (name == "activity-profile") return activity_profile();
    if (name == "kgram") {
        int k = 2;
        if (auto it = kv.find("k"); it != kv.end()) k = parse_int_param("k", it->second.front());
        return kgram(k);
    }
    if (name == "positional") {
        if (auto it = kv.find("max"); it != kv.end())
            return positional(parse_int_param("max", it->second.front()));
        return positional_p95();
    }
    if (name == "numstats") {
        auto attrs = kv.find("attrs");
        auto stats = kv.find("stats");
        if (attrs == kv.end() || stats == kv.end())
            throw ConfigError("numstats needs attrs=<a;b> and stats=<avg,sum,...>");
        std::vector<Stat> parsed;
        for (const std::string& group : stats->second)
            for (const std::string& w : split(group, ','))
                if (!w.empty()) parsed.push_back(parse_stat(w));
        return numeric_stats(attrs->second, std::move(parsed));
    }
    throw ConfigError("unknown encoder '" + name + "'");
}

std::string matrix_to_csv(const FeatureMatrix& m) {
    std::string out;
    std::vector<std::string> header;
    header.reserve(m.cols() + 1);
    header.push_back("case_id");
    for (const DimensionLabel& d : m.columns.dims) header.push_back(dim_text(d));
    append_csv_row(out, header);

    std::vector<std::string> row;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        row.clear();
        row.push_back(m.row_labels[i]);
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_double(m.at(i, j)));
        append_csv_row(out, row);
    }
    return out;
}

} // namespace pmenc
