#include "pmenc/flow.hpp"
#include "pmenc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pmenc {

namespace {

std::size_t index_of(const std::vector<std::string>& alphabet, std::string_view a) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), a);
    if (it == alphabet.end() || *it != a) throw DataError("activity '" + std::string(a) + "' not in alphabet");
    return static_cast<std::size_t>(it - alphabet.begin());
}

} // namespace

std::uint64_t DirectlyFollows::count(std::string_view a, std::string_view b) const {
    return counts[index_of(alphabet, a)][index_of(alphabet, b)];
}

std::uint64_t DirectlyFollows::total() const {
    std::uint64_t t = 0;
    for (const auto& row : counts)
        for (std::uint64_t c : row) t += c;
    return t;
}

double DependencyMatrix::at(std::string_view a, std::string_view b) const {
    return values[index_of(alphabet, a)][index_of(alphabet, b)];
}

bool ConcurrencyRelation::concurrent(std::string_view a, std::string_view b) const {
    if (a == b) return false;
    auto p = a < b ? std::make_pair(std::string(a), std::string(b))
                   : std::make_pair(std::string(b), std::string(a));
    return pairs.count(p) > 0;
}

void ConcurrencyRelation::add(std::string a, std::string b) {
    if (a == b) return;
    if (b < a) std::swap(a, b);
    pairs.emplace(std::move(a), std::move(b));
}

std::size_t ConcurrencyRelation::degree(std::string_view a) const {
    std::size_t n = 0;
    for (const auto& [x, y] : pairs)
        if (x == a || y == a) ++n;
    return n;
}

DirectlyFollows directly_follows(const EventLog& log) {
    DirectlyFollows df;
    df.alphabet = log.activity_alphabet();
    df.counts.assign(df.alphabet.size(), std::vector<std::uint64_t>(df.alphabet.size(), 0));
    for (const Case& c : log.cases()) {
        std::vector<std::string> trace = c.trace();
        for (std::size_t i = 0; i + 1 < trace.size(); ++i)
            ++df.counts[index_of(df.alphabet, trace[i])][index_of(df.alphabet, trace[i + 1])];
    }
    return df;
}

DependencyMatrix dependency_matrix(const DirectlyFollows& df) {
    std::size_t n = df.alphabet.size();
    DependencyMatrix dep;
    dep.alphabet = df.alphabet;
    dep.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double ab = static_cast<double>(df.counts[i][j]);
            if (i == j) {
                dep.values[i][j] = ab / (ab + 1.0);
            } else {
                double ba = static_cast<double>(df.counts[j][i]);
                dep.values[i][j] = (ab - ba) / (ab + ba + 1.0);
            }
        }
    }
    return dep;
}

ConcurrencyRelation concurrency_pairs(const DirectlyFollows& df, double threshold) {
    if (threshold < 0.0 || threshold >= 1.0)
        throw ConfigError("concurrency threshold must lie in [0,1), got " +
                          format_double(threshold));
    DependencyMatrix dep = dependency_matrix(df);
    ConcurrencyRelation rel;
    for (std::size_t i = 0; i < df.alphabet.size(); ++i) {
        for (std::size_t j = i + 1; j < df.alphabet.size(); ++j) {
            if (df.counts[i][j] > 0 && df.counts[j][i] > 0 &&
                std::abs(dep.values[i][j]) < threshold)
                rel.add(df.alphabet[i], df.alphabet[j]);
        }
    }
    return rel;
}

// Lexicographically least member of the equivalence class generated by
// swapping adjacent concurrent activities. Greedy construction: at every
// step, take the smallest remaining activity that commutes with everything
// before it. Equal labels never commute, so their relative order is kept.
std::vector<std::string> canonicalize(const std::vector<std::string>& trace,
                                      const ConcurrencyRelation& rel) {
    if (rel.pairs.empty() || trace.size() < 2) return trace;
    std::vector<std::string> remaining = trace;
    std::vector<std::string> out;
    out.reserve(trace.size());
    while (!remaining.empty()) {
        std::size_t best = remaining.size();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (best != remaining.size() && remaining[best] <= remaining[i]) continue;
            bool movable = true;
            for (std::size_t j = 0; j < i && movable; ++j)
                movable = rel.concurrent(remaining[j], remaining[i]);
            if (movable) best = i;
        }
        out.push_back(std::move(remaining[best]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

TraceTransform canonical_transform(ConcurrencyRelation rel) {
    return [rel = std::move(rel)](const std::vector<std::string>& trace) {
        return canonicalize(trace, rel);
    };
}

std::vector<std::pair<DimensionLabel, double>>
parallelism_features(const EventLog& log, const ConcurrencyRelation& rel) {
    const auto& alphabet = log.activity_alphabet();
    if (alphabet.size() < 2)
        throw DataError("parallelism features need at least two activities, got " +
                        std::to_string(alphabet.size()));

    std::map<std::string, std::size_t> cases_containing;
    std::size_t total_cases = 0;
    for (const Case& c : log.cases()) {
        std::vector<std::string> t = c.trace();
        if (t.empty()) continue;
        ++total_cases;
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        for (const std::string& a : t) ++cases_containing[a];
    }
    if (total_cases == 0) throw DataError("parallelism features need at least one labeled case");

    std::vector<std::pair<DimensionLabel, double>> out;
    out.reserve(alphabet.size() * 2);
    for (const std::string& a : alphabet) {
        double par = static_cast<double>(rel.degree(a)) / static_cast<double>(alphabet.size() - 1);
        double opt = 1.0 - static_cast<double>(cases_containing[a]) / static_cast<double>(total_cases);
        out.emplace_back(FlowDim{a, FlowMetric::parallelism}, par);
        out.emplace_back(FlowDim{a, FlowMetric::optionality}, opt);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

std::string dfg_to_csv(const DirectlyFollows& df) {
    std::string out;
    std::vector<std::string> row;
    row.push_back("");
    for (const std::string& a : df.alphabet) row.push_back(a);
    append_csv_row(out, row);
    for (std::size_t i = 0; i < df.alphabet.size(); ++i) {
        row.clear();
        row.push_back(df.alphabet[i]);
        for (std::uint64_t c : df.counts[i]) row.push_back(std::to_string(c));
        append_csv_row(out, row);
    }
    return out;
}

std::string dependency_to_csv(const DependencyMatrix& dep) {
    std::string out;
    std::vector<std::string> row;
    row.push_back("");
    for (const std::string& a : dep.alphabet) row.push_back(a);
    append_csv_row(out, row);
    for (std::size_t i = 0; i < dep.alphabet.size(); ++i) {
        row.clear();
        row.push_back(dep.alphabet[i]);
        for (double v : dep.values[i]) row.push_back(format_double(v));
        append_csv_row(out, row);
    }
    return out;
}

std::string pairs_to_text(const ConcurrencyRelation& rel) {
    std::string out;
    for (const auto& [a, b] : rel.pairs) {
        out += a;
        out += " || ";
        out += b;
        out += '\n';
    }
    return out;
}

std::string dfg_to_dot(const DirectlyFollows& df) {
    std::string out = "digraph dfg {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < df.alphabet.size(); ++i) {
        for (std::size_t j = 0; j < df.alphabet.size(); ++j) {
            if (df.counts[i][j] == 0) continue;
            out += "  \"" + df.alphabet[i] + "\" -> \"" + df.alphabet[j] + "\" [label=\"" +
                   std::to_string(df.counts[i][j]) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace pmenc
