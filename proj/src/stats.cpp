#include "pmenc/stats.hpp"
#include "pmenc/flow.hpp"
#include "pmenc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_set>

namespace pmenc {

namespace {

// Half-up rounding to one decimal, in integer tenths to keep comparisons exact.
std::int64_t pct_tenths(std::size_t covered, std::size_t total) {
    double pct = 100.0 * static_cast<double>(covered) / static_cast<double>(total);
    return static_cast<std::int64_t>(std::floor(pct * 10.0 + 0.5));
}

} // namespace

CoverageTable coverage_table(const VariantTable& vt, const std::vector<double>& thresholds) {
    if (vt.empty()) throw DataError("coverage table needs a non-empty variant table");

    std::vector<std::size_t> cumulative(vt.variants.size() + 1, 0);
    for (std::size_t i = 0; i < vt.variants.size(); ++i)
        cumulative[i + 1] = cumulative[i] + vt.variants[i].count;

    CoverageTable table;
    std::set<std::size_t> ks;
    if (thresholds.empty()) {
        // one row per count plateau
        for (std::size_t k = 1; k <= vt.variants.size(); ++k) {
            if (k == vt.variants.size() || vt.variants[k].count != vt.variants[k - 1].count)
                ks.insert(k);
        }
    } else {
        std::vector<std::int64_t> wanted;
        for (double t : thresholds) {
            if (t < 0.0 || t > 100.0)
                throw ConfigError("coverage threshold must lie in [0,100], got " + format_double(t));
            wanted.push_back(static_cast<std::int64_t>(std::llround(t * 10.0)));
        }
        std::sort(wanted.begin(), wanted.end());
        wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

        std::size_t k = 0;
        for (std::int64_t w : wanted) {
            while (k < vt.variants.size() && pct_tenths(cumulative[k], vt.total_cases) < w) ++k;
            if (k > 0) ks.insert(k);
        }
        ks.insert(vt.variants.size()); // terminal 100.0 row
    }

    for (std::size_t k : ks)
        table.rows.push_back(CoverageRow{
            cumulative[k], k,
            static_cast<double>(pct_tenths(cumulative[k], vt.total_cases)) / 10.0});
    return table;
}

ParetoFit pareto_fit(const VariantTable& vt) {
    std::vector<std::uint64_t> xs;
    xs.reserve(vt.variants.size());
    for (const Variant& v : vt.variants) xs.push_back(v.count);
    if (xs.empty()) throw DataError("power-law fit needs a non-empty variant table");

    std::sort(xs.begin(), xs.end());
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] != xs[i - 1]) ++distinct;
    if (distinct == 1)
        throw DataError("degenerate fit: all " + std::to_string(xs.size()) +
                        " variant counts are equal");
    if (distinct < 10)
        throw DataError("insufficient data: " + std::to_string(distinct) +
                        " distinct counts, need at least 10");

    const std::size_t n = xs.size();
    std::vector<double> suffix_ln(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        suffix_ln[i] = suffix_ln[i + 1] + std::log(static_cast<double>(xs[i]));

    ParetoFit best;
    bool found = false;
    constexpr std::size_t min_tail = 10;

    for (std::size_t i = 0; i < n;) {
        const std::uint64_t xmin = xs[i];
        std::size_t next = i;
        while (next < n && xs[next] == xmin) ++next;

        const std::size_t tail = n - i;
        if (tail < min_tail) break;

        const double shift = static_cast<double>(xmin) - 0.5;
        const double denom = suffix_ln[i] - static_cast<double>(tail) * std::log(shift);
        if (denom > 0.0) {
            const double alpha = 1.0 + static_cast<double>(tail) / denom;

            // KS distance between the empirical tail and the fitted CDF,
            // evaluated at each distinct tail value.
            double d = 0.0;
            std::size_t below = 0;
            for (std::size_t j = i; j < n;) {
                const std::uint64_t x = xs[j];
                std::size_t run = j;
                while (run < n && xs[run] == x) ++run;
                below += run - j;
                const double f_emp = static_cast<double>(below) / static_cast<double>(tail);
                const double f_fit =
                    1.0 - std::pow((static_cast<double>(x) + 0.5) / shift, 1.0 - alpha);
                d = std::max(d, std::abs(f_emp - f_fit));
                j = run;
            }
            if (!found || d < best.ks_distance) {
                best = ParetoFit{alpha, xmin, std::clamp(d, 0.0, 1.0), tail};
                found = true;
            }
        }
        i = next;
    }
    if (!found) throw DataError("degenerate fit: no viable xmin candidate");
    return best;
}

NormalityReport normality_diagnostic(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 8)
        throw DataError("normality diagnostic needs at least 8 samples, got " + std::to_string(n));
    auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    if (*mn == *mx) throw DataError("degenerate sample: zero variance");

    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
                        static_cast<double>(n);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : samples) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);

    NormalityReport r;
    r.sample_size = n;
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    r.statistic = static_cast<double>(n) / 6.0 *
                  (r.skewness * r.skewness + r.excess_kurtosis * r.excess_kurtosis / 4.0);
    r.normal_at_5pct = r.statistic < 5.991;
    return r;
}

std::vector<double> dependency_frequency_samples(const EventLog& log) {
    if (log.activity_alphabet().size() < 2)
        throw DataError("dependency samples need at least two activities");
    DirectlyFollows df = directly_follows(log);
    std::vector<double> samples;
    for (const auto& row : df.counts)
        for (std::uint64_t c : row)
            if (c > 0) samples.push_back(static_cast<double>(c));
    if (samples.size() < 8)
        throw DataError("insufficient data: " + std::to_string(samples.size()) +
                        " nonzero directly-follows pairs, need at least 8");
    return samples;
}

// ---------------------------------------------------------------------------
// Balancing
// ---------------------------------------------------------------------------

namespace {

Case clone_case(const Case& original, const std::string& new_id, std::size_t dup_n) {
    Case out{new_id, original.events};
    for (Event& e : out.events) {
        e.id += "#dup" + std::to_string(dup_n);
        e.case_id = new_id;
    }
    return out;
}

} // namespace

EventLog balance(const EventLog& log, const BalanceStrategy& s) {
    if (log.empty()) throw DataError("cannot balance an empty log");
    VariantTable vt = extract_variants(log);
    if (vt.total_cases != log.case_count())
        throw DataError("cannot balance: " +
                        std::to_string(log.case_count() - vt.total_cases) +
                        " case(s) have no activity labels and belong to no variant");

    std::size_t target = 0;
    bool may_grow = false, may_shrink = false;
    switch (s.kind) {
        case BalanceStrategy::Kind::oversample_to_max:
            target = vt.variants.front().count; // table is sorted by count desc
            may_grow = true;
            break;
        case BalanceStrategy::Kind::undersample_to_min:
            target = vt.variants.back().count;
            for (const Variant& v : vt.variants) target = std::min(target, v.count);
            may_shrink = true;
            break;
        case BalanceStrategy::Kind::target_count:
            if (s.target < 1) throw ConfigError("target count must be at least 1");
            target = s.target;
            may_grow = may_shrink = true;
            break;
    }

    SplitMix64 rng(s.seed);
    std::unordered_set<std::string> dropped;
    std::unordered_set<std::string> used_ids;
    for (const Case& c : log.cases()) used_ids.insert(c.id);

    std::vector<Case> clones;
    std::size_t dup_n = 0;

    for (const Variant& v : vt.variants) {
        if (may_grow && v.count < target) {
            for (std::size_t i = v.count; i < target; ++i) {
                const std::string& picked = v.case_ids[rng.bounded(v.count)];
                std::string new_id;
                do {
                    ++dup_n;
                    new_id = picked + "#dup" + std::to_string(dup_n);
                } while (!used_ids.insert(new_id).second);
                clones.push_back(clone_case(*log.find_case(picked), new_id, dup_n));
            }
        } else if (may_shrink && v.count > target) {
            std::vector<std::size_t> idx(v.count);
            std::iota(idx.begin(), idx.end(), 0);
            for (std::size_t i = v.count - 1; i > 0; --i) {
                std::size_t j = rng.bounded(i + 1);
                std::swap(idx[i], idx[j]);
            }
            std::sort(idx.begin() + static_cast<std::ptrdiff_t>(target), idx.end());
            for (std::size_t i = target; i < v.count; ++i) dropped.insert(v.case_ids[idx[i]]);
        }
    }

    std::vector<Case> out;
    out.reserve(log.case_count() - dropped.size() + clones.size());
    for (const Case& c : log.cases())
        if (!dropped.count(c.id)) out.push_back(c);
    for (Case& c : clones) out.push_back(std::move(c));
    return EventLog::from_cases(std::move(out));
}

// ---------------------------------------------------------------------------
// Report serializations
// ---------------------------------------------------------------------------

namespace {

std::string join_trace(const std::vector<std::string>& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += '>';
        out += trace[i];
    }
    return out;
}

std::string fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

} // namespace

std::string coverage_to_jsonl(const CoverageTable& t) {
    std::string out;
    for (const CoverageRow& r : t.rows) {
        nlohmann::json j{{"cases_covered", r.cases_covered},
                         {"variant_count", r.variant_count},
                         {"coverage_pct", r.coverage_pct}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string coverage_to_text(const CoverageTable& t) {
    std::string out = "cases_covered  variant_count  coverage_pct\n";
    char buf[96];
    for (const CoverageRow& r : t.rows) {
        std::snprintf(buf, sizeof(buf), "%13zu  %13zu  %11s%%\n", r.cases_covered,
                      r.variant_count, fixed1(r.coverage_pct).c_str());
        out += buf;
    }
    return out;
}

std::string variants_to_jsonl(const VariantTable& vt) {
    std::string out;
    for (const Variant& v : vt.variants) {
        nlohmann::json j{{"trace", v.trace}, {"count", v.count}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string variants_to_text(const VariantTable& vt) {
    std::string out = "count  trace\n";
    char buf[32];
    for (const Variant& v : vt.variants) {
        std::snprintf(buf, sizeof(buf), "%5zu  ", v.count);
        out += buf;
        out += join_trace(v.trace);
        out += '\n';
    }
    return out;
}

std::string pareto_to_jsonl(const ParetoFit& f) {
    nlohmann::json j{{"exponent", f.exponent},
                     {"xmin", f.xmin},
                     {"ks_distance", f.ks_distance},
                     {"tail_size", f.tail_size}};
    return j.dump() + "\n";
}

std::string pareto_to_text(const ParetoFit& f) {
    return "exponent     " + format_double(f.exponent) + "\nxmin         " +
           std::to_string(f.xmin) + "\nks_distance  " + format_double(f.ks_distance) +
           "\ntail_size    " + std::to_string(f.tail_size) + "\n";
}

std::string normality_to_jsonl(const NormalityReport& r) {
    nlohmann::json j{{"sample_size", r.sample_size},
                     {"skewness", r.skewness},
                     {"excess_kurtosis", r.excess_kurtosis},
                     {"statistic", r.statistic},
                     {"normal_at_5pct", r.normal_at_5pct}};
    return j.dump() + "\n";
}

std::string normality_to_text(const NormalityReport& r) {
    return "sample_size      " + std::to_string(r.sample_size) + "\nskewness         " +
           format_double(r.skewness) + "\nexcess_kurtosis  " + format_double(r.excess_kurtosis) +
           "\nstatistic        " + format_double(r.statistic) + "\nnormal_at_5pct   " +
           (r.normal_at_5pct ? "true" : "false") + "\n";
}

} // namespace pmenc
