#pragma once

#include "pmenc/log.hpp"

#include <cstdint>
#include <vector>

namespace pmenc {

struct CoverageRow {
    std::size_t cases_covered = 0;
    std::size_t variant_count = 0;
    double coverage_pct = 0.0; // percent, rounded half-up to one decimal
};

// coverage_pct is non-decreasing and the last row is exactly 100.0 with
// every variant included.
struct CoverageTable {
    std::vector<CoverageRow> rows;
};

// With no thresholds: one row per count plateau (each point where the sorted
// count value changes), ending with the full table. With thresholds (percent
// values): the first top-k crossing each threshold, plus the terminal row.
CoverageTable coverage_table(const VariantTable& vt,
                             const std::vector<double>& thresholds = {});

struct ParetoFit {
    double exponent = 0.0;      // > 1
    std::uint64_t xmin = 1;
    double ks_distance = 1.0;   // in [0,1]
    std::size_t tail_size = 0;  // observations >= xmin
};

// Discrete power-law fit of the variant counts by maximum likelihood,
//   alpha = 1 + n / sum(ln(x_i / (xmin - 0.5))),
// with xmin chosen to minimize the Kolmogorov-Smirnov distance between the
// empirical tail and the fitted CDF. Needs at least 10 distinct count values;
// all-equal counts are a degenerate fit.
ParetoFit pareto_fit(const VariantTable& vt);

struct NormalityReport {
    std::size_t sample_size = 0;
    double skewness = 0.0;        // g1
    double excess_kurtosis = 0.0; // g2
    double statistic = 0.0;       // n/6 * (g1^2 + g2^2/4)
    bool normal_at_5pct = false;  // statistic < 5.991 (chi-square(2), alpha=0.05)
};

// Moment-based two-sided normality check. Requires n >= 8 and nonzero
// variance. The statistic is location and scale free.
NormalityReport normality_diagnostic(const std::vector<double>& samples);

// The positive directly-follows counts |a>b| over all ordered activity
// pairs: the sample the normality diagnostic runs on. Requires at least two
// activities and at least 8 nonzero pairs.
std::vector<double> dependency_frequency_samples(const EventLog& log);

struct BalanceStrategy {
    enum class Kind { oversample_to_max, undersample_to_min, target_count };
    Kind kind = Kind::oversample_to_max;
    std::size_t target = 0;     // target_count only, >= 1
    std::uint64_t seed = 0;
};

// Rebalances the case distribution across variants. Oversampling clones
// whole cases picked uniformly (fresh "#dupN" case and event ids, appended
// after the originals); undersampling keeps a uniform subset with the
// original relative order. No synthetic traces are ever invented. Every case
// must belong to a variant.
EventLog balance(const EventLog& log, const BalanceStrategy& s);

// Report serializations: JSON-lines (one record per row) and aligned text.
std::string coverage_to_jsonl(const CoverageTable& t);
std::string coverage_to_text(const CoverageTable& t);
std::string variants_to_jsonl(const VariantTable& vt);
std::string variants_to_text(const VariantTable& vt);
std::string pareto_to_jsonl(const ParetoFit& f);
std::string pareto_to_text(const ParetoFit& f);
std::string normality_to_jsonl(const NormalityReport& r);
std::string normality_to_text(const NormalityReport& r);

} // namespace pmenc
