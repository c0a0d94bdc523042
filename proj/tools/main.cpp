#include "pmenc/encode.hpp"
#include "pmenc/flow.hpp"
#include "pmenc/ingest.hpp"
#include "pmenc/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using pmenc::ConfigError;
using pmenc::DataError;

struct Options {
    std::string input;
    std::string format; // xes | csv | "" (infer from extension)
    std::string case_col = "case_id";
    std::string activity_col = "activity";
    std::string time_col = "timestamp";
    std::string time_format = "YYYY-MM-DD hh:mm:ss.SSS";
    std::vector<std::string> cols; // extra column mappings
    std::string filter_text;
    std::string out;
    std::string config;

    std::string encoder;             // encode
    std::string report;              // stats / flow
    std::string thresholds;          // stats coverage
    bool json = false;               // stats / validate
    std::string strategy;            // balance
    std::optional<std::uint64_t> seed;
    double threshold = 0.3;          // flow concurrency
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write output file '" + path + "'");
    out << bytes;
    if (!out) throw DataError("failed writing output file '" + path + "'");
}

// "column", "column:type" or "column=attribute:type"; type is one of
// text, int, real, timestamp.
pmenc::CsvColumn parse_col_spec(const std::string& spec) {
    pmenc::CsvColumn col;
    std::string rest = spec;
    if (auto eq = rest.find('='); eq != std::string::npos) {
        col.column = rest.substr(0, eq);
        rest = rest.substr(eq + 1);
    }
    std::string type = "text";
    if (auto colon = rest.find(':'); colon != std::string::npos) {
        type = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
    }
    col.attribute = rest;
    if (col.column.empty()) col.column = rest;
    if (col.attribute.empty() || col.column.empty())
        throw ConfigError("bad --col spec '" + spec + "'");
    if (type == "text")
        col.type = pmenc::AttributeValue::Kind::text;
    else if (type == "int")
        col.type = pmenc::AttributeValue::Kind::integer;
    else if (type == "real")
        col.type = pmenc::AttributeValue::Kind::real;
    else if (type == "timestamp")
        col.type = pmenc::AttributeValue::Kind::timestamp;
    else
        throw ConfigError("bad --col type '" + type + "' (expected text, int, real or timestamp)");
    return col;
}

std::vector<double> parse_threshold_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(start, end - start);
        if (!tok.empty()) {
            double v = 0;
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                throw ConfigError("bad threshold '" + tok + "'");
            out.push_back(v);
        }
        start = end + 1;
    }
    return out;
}

std::string infer_format(const Options& o) {
    if (!o.format.empty()) {
        if (o.format != "xes" && o.format != "csv")
            throw ConfigError("unknown format '" + o.format + "' (expected xes or csv)");
        return o.format;
    }
    if (o.input.size() >= 4 && o.input.substr(o.input.size() - 4) == ".xes") return "xes";
    if (o.input.size() >= 4 && o.input.substr(o.input.size() - 4) == ".csv") return "csv";
    throw ConfigError("cannot infer input format from '" + o.input + "'; pass --format xes|csv");
}

pmenc::LoadResult load_log(const Options& o) {
    if (o.input.empty()) throw ConfigError("--input is required");
    std::string bytes = read_file(o.input);
    pmenc::LoadResult result;
    if (infer_format(o) == "xes") {
        result = pmenc::parse_xes(bytes);
    } else {
        pmenc::CsvMapping mapping;
        mapping.case_column = o.case_col;
        mapping.activity_column = o.activity_col;
        mapping.timestamp_column = o.time_col;
        mapping.timestamp_format = o.time_format;
        for (const std::string& spec : o.cols) mapping.extra_columns.push_back(parse_col_spec(spec));
        result = pmenc::parse_csv(bytes, mapping);
    }
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    return result;
}

void emit(const Options& o, const std::string& data) {
    if (o.out.empty())
        std::cout << data;
    else
        write_file(o.out, data);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_encode(const Options& o) {
    if (o.encoder.empty()) throw ConfigError("encode requires --encoder");
    if (o.out.empty()) throw ConfigError("encode requires --out");
    pmenc::EncodingSpec spec = pmenc::parse_encoder_spec(o.encoder);
    if (!o.filter_text.empty()) {
        pmenc::FilterPredicate extra = pmenc::parse_predicate(o.filter_text);
        for (auto& t : extra.terms) spec.filter.terms.push_back(std::move(t));
    }
    pmenc::LoadResult loaded = load_log(o);
    pmenc::FeatureMatrix m = pmenc::apply_encoding(loaded.log, spec);
    write_file(o.out, pmenc::matrix_to_csv(m));
    std::cerr << "encoded n=" << m.rows() << " d=" << m.cols()
              << " dropped_cases=" << loaded.log.case_count() - m.rows() << "\n";
    return 0;
}

pmenc::EventLog load_filtered(const Options& o) {
    pmenc::LoadResult loaded = load_log(o);
    if (o.filter_text.empty()) return std::move(loaded.log);
    return pmenc::apply_filter(loaded.log, pmenc::parse_predicate(o.filter_text));
}

int cmd_stats(const Options& o) {
    if (o.report.empty()) throw ConfigError("stats requires --report coverage|variants|pareto|normality");
    pmenc::EventLog log = load_filtered(o);

    std::string data;
    if (o.report == "variants") {
        pmenc::VariantTable vt = pmenc::extract_variants(log);
        data = o.json ? pmenc::variants_to_jsonl(vt) : pmenc::variants_to_text(vt);
    } else if (o.report == "coverage") {
        pmenc::VariantTable vt = pmenc::extract_variants(log);
        pmenc::CoverageTable t = pmenc::coverage_table(vt, parse_threshold_list(o.thresholds));
        data = o.json ? pmenc::coverage_to_jsonl(t) : pmenc::coverage_to_text(t);
    } else if (o.report == "pareto") {
        pmenc::ParetoFit f = pmenc::pareto_fit(pmenc::extract_variants(log));
        data = o.json ? pmenc::pareto_to_jsonl(f) : pmenc::pareto_to_text(f);
    } else if (o.report == "normality") {
        pmenc::NormalityReport r =
            pmenc::normality_diagnostic(pmenc::dependency_frequency_samples(log));
        data = o.json ? pmenc::normality_to_jsonl(r) : pmenc::normality_to_text(r);
    } else {
        throw ConfigError("unknown report '" + o.report + "'");
    }
    emit(o, data);
    return 0;
}

int cmd_balance(const Options& o) {
    if (!o.seed) throw ConfigError("balance requires --seed (reproducibility is not optional)");
    if (o.out.empty()) throw ConfigError("balance requires --out");
    if (o.strategy.empty()) throw ConfigError("balance requires --strategy");

    pmenc::BalanceStrategy strategy;
    strategy.seed = *o.seed;
    if (o.strategy == "oversample-to-max") {
        strategy.kind = pmenc::BalanceStrategy::Kind::oversample_to_max;
    } else if (o.strategy == "undersample-to-min") {
        strategy.kind = pmenc::BalanceStrategy::Kind::undersample_to_min;
    } else if (o.strategy.rfind("target:", 0) == 0 || o.strategy.rfind("target-count:", 0) == 0) {
        strategy.kind = pmenc::BalanceStrategy::Kind::target_count;
        std::string num = o.strategy.substr(o.strategy.find(':') + 1);
        char* end = nullptr;
        long v = std::strtol(num.c_str(), &end, 10);
        if (end != num.c_str() + num.size() || v < 1)
            throw ConfigError("bad target count '" + num + "'");
        strategy.target = static_cast<std::size_t>(v);
    } else {
        throw ConfigError("unknown strategy '" + o.strategy +
                          "' (expected oversample-to-max, undersample-to-min or target:<n>)");
    }

    pmenc::EventLog log = load_filtered(o);
    pmenc::EventLog balanced = pmenc::balance(log, strategy);
    write_file(o.out, pmenc::write_csv_log(balanced, o.time_format));
    std::cerr << "balanced cases=" << balanced.case_count() << " (from " << log.case_count()
              << ")\n";
    return 0;
}

int cmd_flow(const Options& o) {
    pmenc::EventLog log = load_filtered(o);
    pmenc::DirectlyFollows df = pmenc::directly_follows(log);
    pmenc::ConcurrencyRelation rel = pmenc::concurrency_pairs(df, o.threshold);

    std::string report = o.report.empty() ? "all" : o.report;
    if (report == "all") {
        if (o.out.empty()) throw ConfigError("flow --report all requires --out <prefix>");
        write_file(o.out + ".dfg.csv", pmenc::dfg_to_csv(df));
        write_file(o.out + ".dep.csv", pmenc::dependency_to_csv(pmenc::dependency_matrix(df)));
        write_file(o.out + ".pairs.txt", pmenc::pairs_to_text(rel));
        write_file(o.out + ".dot", pmenc::dfg_to_dot(df));
        std::cerr << "flow activities=" << df.alphabet.size()
                  << " concurrent_pairs=" << rel.pairs.size() << "\n";
        return 0;
    }
    std::string data;
    if (report == "dfg")
        data = pmenc::dfg_to_csv(df);
    else if (report == "dependency")
        data = pmenc::dependency_to_csv(pmenc::dependency_matrix(df));
    else if (report == "pairs")
        data = pmenc::pairs_to_text(rel);
    else if (report == "dot")
        data = pmenc::dfg_to_dot(df);
    else
        throw ConfigError("unknown flow report '" + report + "'");
    emit(o, data);
    return 0;
}

int cmd_validate(const Options& o) {
    pmenc::LoadResult loaded = load_log(o);
    const pmenc::ValidationReport& r = loaded.report;
    std::string data;
    if (o.json) {
        nlohmann::json j{{"event_count", r.event_count},
                         {"case_count", r.case_count},
                         {"monotonicity_violations", r.monotonicity_violations},
                         {"duplicate_event_ids", r.duplicate_event_ids},
                         {"missing_activity", r.missing_activity},
                         {"missing_timestamp", r.missing_timestamp}};
        data = j.dump() + "\n";
    } else {
        data = "event_count              " + std::to_string(r.event_count) +
               "\ncase_count               " + std::to_string(r.case_count) +
               "\nmonotonicity_violations  " + std::to_string(r.monotonicity_violations) +
               "\nduplicate_event_ids      " + std::to_string(r.duplicate_event_ids) +
               "\nmissing_activity         " + std::to_string(r.missing_activity) +
               "\nmissing_timestamp        " + std::to_string(r.missing_timestamp) + "\n";
    }
    emit(o, data);
    return 0;
}

// ---------------------------------------------------------------------------
// Config file merge: the config supplies defaults, explicit flags win.
// ---------------------------------------------------------------------------

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return "";
}

// Turns {"encoder":"kgram:k=2","seed":42,"json":true,"col":["cost:real"]}
// into ["--encoder","kgram:k=2","--seed","42","--json","--col","cost:real"].
std::vector<std::string> config_to_args(const nlohmann::json& cfg) {
    if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
    std::vector<std::string> args;
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& item : value) {
                args.push_back(flag);
                args.push_back(item.is_string() ? item.get<std::string>() : item.dump());
            }
        } else {
            args.push_back(flag);
            args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return args;
}

void add_shared_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "event log file");
    cmd->add_option("--format", o.format, "xes or csv (default: by file extension)");
    cmd->add_option("--case-col", o.case_col, "CSV case id column");
    cmd->add_option("--activity-col", o.activity_col, "CSV activity column");
    cmd->add_option("--time-col", o.time_col, "CSV timestamp column");
    cmd->add_option("--time-format", o.time_format, "timestamp pattern (YYYY MM DD hh mm ss .SSS \xc2\xb1zz:zz)");
    cmd->add_option("--col", o.cols, "extra column mapping: column[=attribute][:type]");
    cmd->add_option("--filter", o.filter_text, "event filter predicate");
    cmd->add_option("--out", o.out, "output file (or prefix for flow --report all)");
    cmd->add_option("--config", o.config, "JSON config file; explicit flags override it");
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"pmenc: event-log feature encoding, diagnostics and balancing"};
    app.require_subcommand(1);

    CLI::App* encode = app.add_subcommand("encode", "encode a log into a feature matrix");
    add_shared_options(encode, o);
    encode->add_option("--encoder", o.encoder,
                       "one-hot | activity-profile | kgram:k=<n> | positional:max=<n> | "
                       "numstats:attrs=<a;b>;stats=<avg,sum,...>");

    CLI::App* stats = app.add_subcommand("stats", "variant and distribution diagnostics");
    add_shared_options(stats, o);
    stats->add_option("--report", o.report, "coverage | variants | pareto | normality");
    stats->add_option("--thresholds", o.thresholds, "coverage thresholds, e.g. 37.6,68.4");
    stats->add_flag("--json", o.json, "emit JSON lines instead of text");

    CLI::App* balance = app.add_subcommand("balance", "rebalance cases across variants");
    add_shared_options(balance, o);
    balance->add_option("--strategy", o.strategy,
                        "oversample-to-max | undersample-to-min | target:<n>");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt = balance->add_option("--seed", seed_value, "RNG seed (required)");

    CLI::App* flow = app.add_subcommand("flow", "directly-follows, dependency and concurrency");
    add_shared_options(flow, o);
    flow->add_option("--report", o.report, "all | dfg | dependency | pairs | dot");
    flow->add_option("--threshold", o.threshold, "concurrency dependency threshold in [0,1)");

    CLI::App* validate = app.add_subcommand("validate", "parse a log and report its health");
    add_shared_options(validate, o);
    validate->add_flag("--json", o.json, "emit JSON instead of text");

    for (CLI::App* sub : {encode, stats, balance, flow, validate})
        for (CLI::Option* opt : sub->get_options())
            if (opt->get_expected_min() >= 1 && opt->get_type_size() == 1 &&
                opt->get_name() != "--col")
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        // Assemble the effective argument list: config-derived flags first,
        // then the user's own flags so they take precedence.
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty() && !args.empty()) {
            nlohmann::json cfg;
            try {
                cfg = nlohmann::json::parse(read_file(config_path));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("bad config file '" + config_path + "': " + e.what());
            }
            std::vector<std::string> injected = config_to_args(cfg);
            args.insert(args.begin() + 1, injected.begin(), injected.end());
        }

        // CLI11 wants reversed argument order for this entry point.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (seed_opt->count() > 0) o.seed = seed_value;

        if (encode->parsed()) return cmd_encode(o);
        if (stats->parsed()) return cmd_stats(o);
        if (balance->parsed()) return cmd_balance(o);
        if (flow->parsed()) return cmd_flow(o);
        if (validate->parsed()) return cmd_validate(o);
        throw ConfigError("no command given");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pmenc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
