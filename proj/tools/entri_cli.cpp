#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entri/entri.hpp"

namespace {

struct Flags {
    std::string input, builtin_name, schema, cls, name, confusion;
    std::string transform, disc, support, na, config;
    std::string partition_x, partition_y;
    std::string methods, report, kind = "aggregate";
    std::string out_report, out_svg;
    std::size_t bins = 0;
    std::uint64_t seed = 17;
    int maxit = 200;
    double tol = 1e-4, alpha = 1.0, grid_step = 0.2;
    bool log_shift = false;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    for (char ch : s) {
        if (ch == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += ch;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

bool parse_support(const std::string& s) {
    if (s == "observed") return true;
    if (s == "declared") return false;
    throw entri::ArgumentError("unknown support mode '" + s +
                               "' (expected declared or observed)");
}

bool parse_na(const std::string& s) {
    if (s == "drop") return true;
    if (s == "fail") return false;
    throw entri::ArgumentError("unknown na policy '" + s + "' (expected fail or drop)");
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--input", f.input, "dataset CSV path");
    cmd->add_option("--builtin", f.builtin_name, "built-in dataset name (iris)");
    cmd->add_option("--schema", f.schema, "dataset schema JSON path");
    cmd->add_option("--class", f.cls, "class column name");
    cmd->add_option("--name", f.name, "dataset name override for reports");
    cmd->add_option("--transform", f.transform,
                    "none, log, pca, ica, log+pca or log+ica");
    cmd->add_option("--disc", f.disc, "discretization: equal-frequency or equal-width");
    cmd->add_option("--bins", f.bins, "bins per variable (default: ceil(sqrt(m)), capped 32)");
    cmd->add_option("--seed", f.seed, "random seed (default 17)");
    cmd->add_option("--out-report", f.out_report, "write the coordinates CSV here");
    cmd->add_option("--out-svg", f.out_svg, "write the triangle SVG here");
    cmd->add_option("--support", f.support, "cardinalities: declared (default) or observed");
    cmd->add_option("--na", f.na, "missing values: fail (default) or drop");
    cmd->add_flag("--log-shift", f.log_shift, "shift non-positive columns before taking logs");
    cmd->add_option("--maxit", f.maxit, "ICA iteration cap (default 200)");
    cmd->add_option("--tol", f.tol, "ICA convergence tolerance (default 1e-4)");
    cmd->add_option("--alpha", f.alpha, "ICA logcosh alpha in [1,2] (default 1)");
    cmd->add_option("--grid-step", f.grid_step, "triangle grid step: 0.1, 0.2 or 0.25");
    cmd->add_option("--config", f.config, "JSON config file; explicit flags override it");
}

struct Extra {
    std::string methods, report, kind;
};

void apply_json(entri::RunConfig& cfg, Extra& extra, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw entri::ArgumentError("cannot open config " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw entri::ArgumentError("config " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw entri::ArgumentError("config " + path + " must be an object");

    static const std::set<std::string> known = {
        "input",       "builtin",     "schema",  "class",    "name",     "confusion",
        "transform",   "disc",        "bins",    "seed",     "out_report", "out_svg",
        "partition_x", "partition_y", "support", "na",       "log_shift",  "maxit",
        "tol",         "alpha",       "grid_step", "methods", "report",    "kind"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) throw entri::ArgumentError("config: unknown key '" + key + "'");

    const auto str = [&](const char* key) -> std::string {
        if (!doc.at(key).is_string())
            throw entri::ArgumentError(std::string("config: key '") + key + "' must be a string");
        return doc.at(key).get<std::string>();
    };
    const auto list = [&](const char* key) -> std::vector<std::string> {
        const auto& v = doc.at(key);
        if (v.is_string()) return split_list(v.get<std::string>());
        if (v.is_array()) {
            std::vector<std::string> out;
            for (const auto& item : v) {
                if (!item.is_string())
                    throw entri::ArgumentError(std::string("config: key '") + key +
                                               "' must hold strings");
                out.push_back(item.get<std::string>());
            }
            return out;
        }
        throw entri::ArgumentError(std::string("config: key '") + key +
                                   "' must be a string or array");
    };

    try {
        if (doc.contains("input")) cfg.input = str("input");
        if (doc.contains("builtin")) cfg.builtin_name = str("builtin");
        if (doc.contains("schema")) cfg.schema_path = str("schema");
        if (doc.contains("class")) cfg.class_column = str("class");
        if (doc.contains("name")) cfg.dataset_name = str("name");
        if (doc.contains("confusion")) cfg.confusion_path = str("confusion");
        if (doc.contains("transform")) cfg.transform = entri::parse_transform(str("transform"));
        if (doc.contains("disc")) cfg.strategy = entri::parse_strategy(str("disc"));
        if (doc.contains("bins")) cfg.bins = doc.at("bins").get<std::size_t>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("out_report")) cfg.out_report = str("out_report");
        if (doc.contains("out_svg")) cfg.out_svg = str("out_svg");
        if (doc.contains("partition_x")) cfg.partition_x = list("partition_x");
        if (doc.contains("partition_y")) cfg.partition_y = list("partition_y");
        if (doc.contains("support")) cfg.support_observed = parse_support(str("support"));
        if (doc.contains("na")) cfg.drop_missing = parse_na(str("na"));
        if (doc.contains("log_shift")) cfg.log_shift = doc.at("log_shift").get<bool>();
        if (doc.contains("maxit")) cfg.ica.maxit = doc.at("maxit").get<int>();
        if (doc.contains("tol")) cfg.ica.tol = doc.at("tol").get<double>();
        if (doc.contains("alpha")) cfg.ica.alpha = doc.at("alpha").get<double>();
        if (doc.contains("grid_step")) cfg.grid_step = doc.at("grid_step").get<double>();
        if (doc.contains("methods")) {
            std::string joined;
            for (const std::string& m : list("methods")) joined += (joined.empty() ? "" : ",") + m;
            extra.methods = joined;
        }
        if (doc.contains("report")) extra.report = str("report");
        if (doc.contains("kind")) extra.kind = str("kind");
    } catch (const nlohmann::json::exception& e) {
        throw entri::ArgumentError("config " + path + ": " + e.what());
    }
}

entri::RunConfig build_config(CLI::App* cmd, const Flags& f, Extra& extra) {
    entri::RunConfig cfg;
    extra.kind = "";
    if (cmd->count("--config")) apply_json(cfg, extra, f.config);

    const auto given = [&](const char* name) {
        return cmd->get_option_no_throw(name) && cmd->count(name) > 0;
    };
    if (given("--input")) cfg.input = f.input;
    if (given("--builtin")) cfg.builtin_name = f.builtin_name;
    if (given("--schema")) cfg.schema_path = f.schema;
    if (given("--class")) cfg.class_column = f.cls;
    if (given("--name")) cfg.dataset_name = f.name;
    if (given("--confusion")) cfg.confusion_path = f.confusion;
    if (given("--transform")) cfg.transform = entri::parse_transform(f.transform);
    if (given("--disc")) cfg.strategy = entri::parse_strategy(f.disc);
    if (given("--bins")) cfg.bins = f.bins;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--out-report")) cfg.out_report = f.out_report;
    if (given("--out-svg")) cfg.out_svg = f.out_svg;
    if (given("--partition-x")) cfg.partition_x = split_list(f.partition_x);
    if (given("--partition-y")) cfg.partition_y = split_list(f.partition_y);
    if (given("--support")) cfg.support_observed = parse_support(f.support);
    if (given("--na")) cfg.drop_missing = parse_na(f.na);
    if (given("--log-shift")) cfg.log_shift = f.log_shift;
    if (given("--maxit")) cfg.ica.maxit = f.maxit;
    if (given("--tol")) cfg.ica.tol = f.tol;
    if (given("--alpha")) cfg.ica.alpha = f.alpha;
    if (given("--grid-step")) cfg.grid_step = f.grid_step;
    if (given("--methods")) extra.methods = f.methods;
    if (given("--report")) extra.report = f.report;
    if (given("--kind")) extra.kind = f.kind;
    return cfg;
}

void report_result(const entri::RunConfig& cfg, const entri::CommandResult& result) {
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
    if (cfg.out_report.empty()) std::cout << result.report_csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-triangle decompositions of partitioned datasets"};
    app.require_subcommand(1);

    Flags mf, sf, cf, pf;
    CLI::App* measure = app.add_subcommand(
        "measure", "Entropy balance of a dataset partition or a confusion matrix");
    add_common(measure, mf);
    measure->add_option("--partition-x", mf.partition_x, "comma list of X-side columns");
    measure->add_option("--partition-y", mf.partition_y, "comma list of Y-side columns");
    measure->add_option("--confusion", mf.confusion, "k x k confusion-matrix CSV (counts)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Per-i balance of ranked transformed features against the raw features");
    add_common(sweep, sf);

    CLI::App* compare =
        app.add_subcommand("compare", "Sweep several transforms and merge the results");
    add_common(compare, cf);
    compare->add_option("--methods", cf.methods, "comma list of methods, e.g. log+pca,log+ica");

    CLI::App* plot = app.add_subcommand("plot", "Render a coordinates report as an SVG");
    add_common(plot, pf);
    plot->add_option("--report", pf.report, "coordinates CSV to render");
    plot->add_option("--kind", pf.kind, "aggregate (default) or split");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Extra extra;
        if (measure->parsed()) {
            const entri::RunConfig cfg = build_config(measure, mf, extra);
            report_result(cfg, entri::cmd_measure(cfg));
        } else if (sweep->parsed()) {
            const entri::RunConfig cfg = build_config(sweep, sf, extra);
            report_result(cfg, entri::cmd_sweep(cfg));
        } else if (compare->parsed()) {
            const entri::RunConfig base = build_config(compare, cf, extra);
            if (extra.methods.empty())
                throw entri::ArgumentError("compare needs --methods (e.g. pca,ica)");
            std::vector<entri::RunConfig> configs;
            for (const std::string& method : split_list(extra.methods)) {
                entri::RunConfig cfg = base;
                cfg.transform = entri::parse_transform(method);
                configs.push_back(std::move(cfg));
            }
            report_result(base, entri::cmd_compare(configs));
        } else if (plot->parsed()) {
            const entri::RunConfig cfg = build_config(plot, pf, extra);
            if (extra.report.empty()) throw entri::ArgumentError("plot needs --report");
            const entri::CommandResult result = entri::cmd_plot(
                cfg, extra.report, extra.kind.empty() ? std::string("aggregate") : extra.kind);
            for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
            if (cfg.out_svg.empty()) std::cout << result.svg;
        }
    } catch (const entri::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const entri::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const entri::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
