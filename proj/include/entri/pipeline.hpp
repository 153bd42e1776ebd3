#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entri/balance.hpp"
#include "entri/dataset.hpp"
#include "entri/discretize.hpp"
#include "entri/report.hpp"
#include "entri/ternary.hpp"
#include "entri/transforms.hpp"

namespace entri {

enum class TransformKind { None, Log, Pca, Ica };

struct TransformSpec {
    TransformKind kind = TransformKind::None;
    bool log_first = false;
};

inline TransformSpec parse_transform(const std::string& s) {
    if (s == "none") return {TransformKind::None, false};
    if (s == "log") return {TransformKind::Log, false};
    if (s == "pca") return {TransformKind::Pca, false};
    if (s == "ica") return {TransformKind::Ica, false};
    if (s == "log+pca") return {TransformKind::Pca, true};
    if (s == "log+ica") return {TransformKind::Ica, true};
    throw ArgumentError("unknown transform '" + s +
                        "' (expected none, log, pca, ica, log+pca or log+ica)");
}

inline std::string to_string(const TransformSpec& t) {
    switch (t.kind) {
        case TransformKind::None: return "none";
        case TransformKind::Log: return "log";
        case TransformKind::Pca: return t.log_first ? "log+pca" : "pca";
        case TransformKind::Ica: return t.log_first ? "log+ica" : "ica";
    }
    return "?";
}

struct RunConfig {
    std::string input;
    std::string builtin_name;
    std::string schema_path;
    std::string confusion_path;
    std::string class_column;
    TransformSpec transform;
    DiscStrategy strategy = DiscStrategy::EqualFrequency;
    std::size_t bins = 0;  // 0 picks ceil(sqrt(m)) capped at 32
    std::vector<std::string> partition_x;
    std::vector<std::string> partition_y;
    std::uint64_t seed = 17;
    std::string out_report;
    std::string out_svg;
    bool support_observed = false;
    bool drop_missing = false;
    bool log_shift = false;
    IcaParams ica;
    double grid_step = 0.2;
    std::string dataset_name;
};

struct CommandResult {
    std::vector<ReportRow> rows;
    std::string report_csv;
    std::string svg;
    std::vector<std::string> warnings;
    // A sweep failure after some completed steps: outputs above cover the
    // completed prefix, the error is preserved for the caller to rethrow.
    std::exception_ptr step_error;
};

inline constexpr const char* kSeriesPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

namespace detail {

struct EncodedBlock {
    std::vector<std::string> names;
    std::vector<std::vector<Code>> codes;
    std::vector<std::size_t> cards;
    std::vector<std::string> warnings;
};

inline EncodedBlock encode_table_columns(const DataTable& table,
                                         const std::vector<std::size_t>& idx,
                                         DiscStrategy strategy, std::size_t bins) {
    EncodedBlock block;
    for (std::size_t ci : idx) {
        const Column& col = table.columns[ci];
        DiscretizeResult r = col.kind == ColumnKind::Numeric
                                 ? fit_discretize(col.numeric, strategy, bins, col.name)
                                 : encode_categorical(col.labels, col.name);
        if (r.codebook.degenerate)
            block.warnings.push_back("column " + col.name + " is constant, using one bin");
        block.names.push_back(col.name);
        block.cards.push_back(r.codebook.cardinality);
        block.codes.push_back(std::move(r.codes));
    }
    return block;
}

inline EncodedBlock encode_matrix_columns(const Matrix& data,
                                          const std::vector<std::string>& names,
                                          DiscStrategy strategy, std::size_t bins) {
    EncodedBlock block;
    std::vector<double> column(data.rows());
    for (std::size_t j = 0; j < data.cols(); ++j) {
        for (std::size_t i = 0; i < data.rows(); ++i) column[i] = data(i, j);
        DiscretizeResult r = fit_discretize(column, strategy, bins, names[j]);
        if (r.codebook.degenerate)
            block.warnings.push_back("column " + names[j] + " is constant, using one bin");
        block.names.push_back(names[j]);
        block.cards.push_back(r.codebook.cardinality);
        block.codes.push_back(std::move(r.codes));
    }
    return block;
}

inline std::pair<JointDistribution, Partition> joint_from_blocks(const EncodedBlock& x,
                                                                 const EncodedBlock& y) {
    const std::size_t nx = x.codes.size(), ny = y.codes.size();
    const std::size_t m = x.codes.empty() ? y.codes.front().size() : x.codes.front().size();

    std::vector<std::string> names = x.names;
    names.insert(names.end(), y.names.begin(), y.names.end());
    std::vector<std::size_t> cards = x.cards;
    cards.insert(cards.end(), y.cards.begin(), y.cards.end());

    std::map<CodeTuple, std::uint64_t> counts;
    CodeTuple tuple(nx + ny);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t v = 0; v < nx; ++v) tuple[v] = x.codes[v][r];
        for (std::size_t v = 0; v < ny; ++v) tuple[nx + v] = y.codes[v][r];
        ++counts[tuple];
    }

    Partition part;
    for (std::size_t v = 0; v < nx; ++v) part.x_vars.push_back(v);
    for (std::size_t v = 0; v < ny; ++v) part.y_vars.push_back(nx + v);
    return {JointDistribution(std::move(names), std::move(cards), std::move(counts), m),
            std::move(part)};
}

inline std::vector<ReportRow> balance_rows(const std::string& dataset,
                                           const std::string& transform, std::size_t i,
                                           const JointDistribution& joint,
                                           const Partition& part) {
    const ChannelDecomposition ch = channel_balance(joint, part);
    const auto [sx, sy] = split_balance(joint, part);
    const TriangleCoord agg = normalize_aggregate(ch);
    const TriangleCoord cx = normalize_split(sx);
    const TriangleCoord cy = normalize_split(sy);

    const auto row = [&](const char* side, double h_u, const TriangleCoord& c, double d_bits,
                         double i_bits, double v_bits) {
        ReportRow r;
        r.dataset = dataset;
        r.transform = transform;
        r.i = i;
        r.side = side;
        r.h_u_bits = h_u;
        r.delta_prime = c.delta_prime;
        r.info_prime = c.info_prime;
        r.vi_prime = c.vi_prime;
        r.delta_bits = d_bits;
        r.info_bits = i_bits;
        r.vi_bits = v_bits;
        return r;
    };
    return {row("X", sx.h_u, cx, sx.delta_h, sx.binding, sx.h_cond),
            row("Y", sy.h_u, cy, sy.delta_h, sy.binding, sy.h_cond),
            row("XY", ch.h_u_total, agg, ch.delta_h, 2.0 * ch.binding, ch.vi)};
}

inline TriangleCoord coord_from_row(const ReportRow& r) {
    TriangleCoord c;
    c.delta_prime = r.delta_prime;
    c.info_prime = r.info_prime;
    c.vi_prime = r.vi_prime;
    c.kind = r.side == "XY"  ? CoordKind::Aggregate
             : r.side == "X" ? CoordKind::SplitX
                             : CoordKind::SplitY;
    return c;
}

inline std::string method_tag(const TransformSpec& t) {
    return t.kind == TransformKind::Pca ? "1" : "2";
}

inline Matrix numeric_features(const DataTable& table, std::vector<std::string>* names) {
    const std::vector<std::size_t> idx = table.feature_indices();
    if (idx.empty()) throw DataError("no feature columns");
    for (std::size_t ci : idx)
        if (table.columns[ci].kind != ColumnKind::Numeric)
            throw DataError("column " + table.columns[ci].name +
                            " is categorical; transforms need numeric features");
    Matrix data(table.rows, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const Column& col = table.columns[idx[j]];
        if (names) names->push_back(col.name);
        for (std::size_t r = 0; r < table.rows; ++r) data(r, j) = col.numeric[r];
    }
    return data;
}

inline void emit_outputs(const RunConfig& cfg, CommandResult& result,
                         const PlotSpec* spec = nullptr) {
    result.report_csv = report_to_csv(result.rows);
    if (!cfg.out_report.empty()) write_report(result.rows, cfg.out_report);
    if (spec) {
        result.svg = render_svg(*spec);
        if (!cfg.out_svg.empty()) write_text_file(cfg.out_svg, result.svg);
    }
}

}  // namespace detail

inline DataTable load_input(const RunConfig& cfg) {
    DataTable table;
    if (!cfg.builtin_name.empty()) {
        table = builtin(cfg.builtin_name);
    } else if (!cfg.input.empty()) {
        CsvOptions options;
        options.na_policy = cfg.drop_missing ? NaPolicy::DropRow : NaPolicy::Fail;
        options.class_column = cfg.class_column;
        std::string schema_name;
        if (!cfg.schema_path.empty()) {
            const DatasetSchema schema = load_schema(cfg.schema_path);
            schema_name = schema.name;
            options.kind_overrides = schema.kinds;
            if (options.class_column.empty()) options.class_column = schema.class_column;
        }
        table = load_csv(cfg.input, options);
        if (!schema_name.empty()) table.name = schema_name;
    } else {
        throw ArgumentError("no input: give --input or --builtin");
    }
    if (!cfg.dataset_name.empty()) table.name = cfg.dataset_name;
    return table;
}

namespace detail {

inline std::vector<std::vector<std::uint64_t>> load_confusion(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const auto records = parse_csv_records(buffer.str(), ',');
    if (records.empty()) throw DataError("empty input: " + path);

    std::vector<std::vector<std::uint64_t>> counts;
    for (std::size_t r = 0; r < records.size(); ++r) {
        std::vector<std::uint64_t> row;
        for (const std::string& cell : records[r]) {
            const auto v = parse_number(cell);
            if (!v || *v < 0.0 || *v != std::floor(*v))
                throw DataError("confusion matrix: bad count '" + cell + "' at line " +
                                std::to_string(r + 1));
            row.push_back(static_cast<std::uint64_t>(*v));
        }
        counts.push_back(std::move(row));
    }
    return counts;
}

inline CommandResult measure_confusion(const RunConfig& cfg) {
    const auto counts = load_confusion(cfg.confusion_path);
    const CbetResult cbet = cbet_from_confusion(counts);

    std::string dataset = cfg.dataset_name;
    if (dataset.empty()) {
        dataset = cfg.confusion_path;
        if (const auto slash = dataset.find_last_of("/\\"); slash != std::string::npos)
            dataset = dataset.substr(slash + 1);
        if (const auto dot = dataset.find_last_of('.'); dot != std::string::npos)
            dataset = dataset.substr(0, dot);
    }

    CommandResult result;
    const auto row = [&](const char* side, double h_u, const TriangleCoord& c, double d_bits,
                         double i_bits, double v_bits) {
        ReportRow r;
        r.dataset = dataset;
        r.transform = "none";
        r.i = 0;
        r.side = side;
        r.h_u_bits = h_u;
        r.delta_prime = c.delta_prime;
        r.info_prime = c.info_prime;
        r.vi_prime = c.vi_prime;
        r.delta_bits = d_bits;
        r.info_bits = i_bits;
        r.vi_bits = v_bits;
        return r;
    };
    result.rows = {row("X", cbet.split_x.h_u, cbet.coord_x, cbet.split_x.delta_h,
                       cbet.split_x.binding, cbet.split_x.h_cond),
                   row("Y", cbet.split_y.h_u, cbet.coord_y, cbet.split_y.delta_h,
                       cbet.split_y.binding, cbet.split_y.h_cond),
                   row("XY", cbet.channel.h_u_total, cbet.aggregate, cbet.channel.delta_h,
                       2.0 * cbet.channel.binding, cbet.channel.vi)};

    PlotSpec spec;
    spec.title = dataset + ": confusion matrix";
    spec.grid_step = cfg.grid_step;
    spec.points.push_back({cbet.coord_x, "actual", Glyph::Cross, kSeriesPalette[0]});
    spec.points.push_back({cbet.coord_y, "predicted", Glyph::Circle, kSeriesPalette[0]});
    spec.points.push_back({cbet.aggregate, "", Glyph::FilledCircle, kSeriesPalette[0]});
    emit_outputs(cfg, result, &spec);
    return result;
}

}  // namespace detail

inline CommandResult cmd_measure(const RunConfig& cfg) {
    if (!cfg.confusion_path.empty()) return detail::measure_confusion(cfg);

    const DataTable table = load_input(cfg);
    const std::size_t bins = cfg.bins ? cfg.bins : default_bins(table.rows);

    CommandResult result;
    result.warnings = table.warnings;

    detail::EncodedBlock xb, yb;
    std::size_t i_tag = 0;
    if (cfg.transform.kind == TransformKind::None) {
        std::vector<std::size_t> x_idx, y_idx;
        if (cfg.partition_x.empty() && cfg.partition_y.empty()) {
            const Column* cls = table.class_column();
            if (!cls)
                throw ArgumentError(
                    "no class column to partition against: give --partition-x/--partition-y, "
                    "--class or a schema");
            x_idx = table.feature_indices();
            y_idx = {table.column_index(cls->name)};
        } else {
            std::set<std::size_t> x_set, y_set;
            for (const std::string& name : cfg.partition_x)
                x_set.insert(table.column_index(name));
            for (const std::string& name : cfg.partition_y)
                y_set.insert(table.column_index(name));
            for (std::size_t ci : x_set)
                if (y_set.count(ci))
                    throw ArgumentError("column " + table.columns[ci].name +
                                        " appears on both sides of the partition");
            if (x_set.empty()) {
                for (std::size_t ci = 0; ci < table.columns.size(); ++ci)
                    if (!y_set.count(ci)) x_set.insert(ci);
            }
            if (y_set.empty()) {
                for (std::size_t ci = 0; ci < table.columns.size(); ++ci)
                    if (!x_set.count(ci)) y_set.insert(ci);
            }
            if (x_set.empty() || y_set.empty())
                throw ArgumentError("partition leaves one side empty");
            x_idx.assign(x_set.begin(), x_set.end());
            y_idx.assign(y_set.begin(), y_set.end());
        }
        xb = detail::encode_table_columns(table, x_idx, cfg.strategy, bins);
        yb = detail::encode_table_columns(table, y_idx, cfg.strategy, bins);
    } else {
        std::vector<std::string> feature_names;
        const Matrix raw = detail::numeric_features(table, &feature_names);
        xb = detail::encode_table_columns(table, table.feature_indices(), cfg.strategy, bins);

        Matrix input = raw;
        if (cfg.transform.log_first || cfg.transform.kind == TransformKind::Log)
            input = log_transform(raw, cfg.log_shift).data;

        const std::size_t n = raw.cols();
        i_tag = n;
        Matrix scores;
        std::vector<std::string> score_names;
        if (cfg.transform.kind == TransformKind::Log) {
            scores = input;
            for (const std::string& name : feature_names) score_names.push_back("log_" + name);
        } else if (cfg.transform.kind == TransformKind::Pca) {
            scores = pca_project(pca_fit(input), input, n);
            for (std::size_t c = 1; c <= n; ++c) score_names.push_back("pc" + std::to_string(c));
        } else {
            const IcaModel model = fastica(input, n, cfg.ica, cfg.seed);
            if (!model.converged)
                result.warnings.push_back("ICA did not converge in " +
                                          std::to_string(cfg.ica.maxit) + " iterations");
            scores = ica_project(model, input);
            for (std::size_t c = 1; c <= n; ++c) score_names.push_back("ic" + std::to_string(c));
        }
        yb = detail::encode_matrix_columns(scores, score_names, cfg.strategy, bins);
    }
    for (const auto& w : xb.warnings) result.warnings.push_back(w);
    for (const auto& w : yb.warnings) result.warnings.push_back(w);

    auto [joint, part] = detail::joint_from_blocks(xb, yb);
    if (cfg.support_observed) joint = compact_support(joint);
    result.rows =
        detail::balance_rows(table.name, to_string(cfg.transform), i_tag, joint, part);

    PlotSpec spec;
    spec.title = table.name + ": " + to_string(cfg.transform);
    spec.grid_step = cfg.grid_step;
    spec.points.push_back(
        {detail::coord_from_row(result.rows[0]), "X", Glyph::Cross, kSeriesPalette[0]});
    spec.points.push_back(
        {detail::coord_from_row(result.rows[1]), "Y", Glyph::Circle, kSeriesPalette[0]});
    spec.points.push_back(
        {detail::coord_from_row(result.rows[2]), "", Glyph::FilledCircle, kSeriesPalette[0]});
    detail::emit_outputs(cfg, result, &spec);
    return result;
}

namespace detail {

/// Shared sweep core: balance rows plus plot points for i = 1..n, stopping
/// early on a tagged step failure.
inline void run_sweep(const RunConfig& cfg, const DataTable& table, CommandResult& result,
                      PlotSpec& spec, Glyph glyph, bool color_by_method,
                      std::size_t method_index) {
    if (cfg.transform.kind != TransformKind::Pca && cfg.transform.kind != TransformKind::Ica)
        throw ArgumentError("sweep needs --transform pca, ica, log+pca or log+ica");

    const std::size_t bins = cfg.bins ? cfg.bins : default_bins(table.rows);
    std::vector<std::string> feature_names;
    const Matrix raw = numeric_features(table, &feature_names);
    const std::size_t n = raw.cols();

    const EncodedBlock xb =
        encode_table_columns(table, table.feature_indices(), cfg.strategy, bins);
    for (const auto& w : xb.warnings) result.warnings.push_back(w);

    Matrix input = raw;
    if (cfg.transform.log_first) input = log_transform(raw, cfg.log_shift).data;

    const bool is_pca = cfg.transform.kind == TransformKind::Pca;
    PcaModel pca;
    if (is_pca) pca = pca_fit(input);

    const std::string transform_name = to_string(cfg.transform);
    const std::string tag = method_tag(cfg.transform);
    const char* prefix = is_pca ? "pc" : "ic";

    for (std::size_t i = 1; i <= n; ++i) {
        Matrix scores;
        try {
            if (is_pca) {
                scores = pca_project(pca, input, i);
            } else {
                const IcaModel model = fastica(input, i, cfg.ica, cfg.seed + i);
                if (!model.converged)
                    result.warnings.push_back("i=" + std::to_string(i) +
                                              ": ICA did not converge in " +
                                              std::to_string(cfg.ica.maxit) + " iterations");
                scores = ica_project(model, input);
            }
        } catch (const DataError& e) {
            result.step_error = std::make_exception_ptr(
                DataError("sweep step i=" + std::to_string(i) + ": " + e.what()));
            break;
        }

        std::vector<std::string> score_names;
        for (std::size_t c = 1; c <= i; ++c)
            score_names.push_back(prefix + std::to_string(c));
        EncodedBlock yb = encode_matrix_columns(scores, score_names, cfg.strategy, bins);

        auto [joint, part] = joint_from_blocks(xb, yb);
        if (cfg.support_observed) joint = compact_support(joint);
        const auto rows = balance_rows(table.name, transform_name, i, joint, part);
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());

        const std::string color =
            kSeriesPalette[(color_by_method ? method_index : i - 1) % 10];
        const std::string label = tag + "_" + std::to_string(i);
        spec.points.push_back({coord_from_row(rows[0]), label, Glyph::Cross, color});
        spec.points.push_back({coord_from_row(rows[1]), label, Glyph::Circle, color});
        spec.points.push_back({coord_from_row(rows[2]), label, glyph, color});
    }
}

}  // namespace detail

inline CommandResult cmd_sweep(const RunConfig& cfg) {
    const DataTable table = load_input(cfg);

    CommandResult result;
    result.warnings = table.warnings;
    PlotSpec spec;
    spec.title = table.name + ": " + to_string(cfg.transform) + " sweep";
    spec.grid_step = cfg.grid_step;

    detail::run_sweep(cfg, table, result, spec, Glyph::FilledCircle, false, 0);
    detail::emit_outputs(cfg, result, &spec);
    if (result.step_error) std::rethrow_exception(result.step_error);
    return result;
}

/// Runs one sweep per method over the same dataset and discretization, plus
/// a reference point for the deterministic pre-transform, and merges the
/// results into one report and one aggregate triangle.
inline CommandResult cmd_compare(const std::vector<RunConfig>& configs) {
    if (configs.size() < 2) throw ArgumentError("compare needs at least 2 methods");
    const RunConfig& base = configs.front();
    for (const RunConfig& cfg : configs) {
        if (cfg.input != base.input || cfg.builtin_name != base.builtin_name ||
            cfg.schema_path != base.schema_path)
            throw ArgumentError("compare: methods must share the dataset");
        if (cfg.strategy != base.strategy || cfg.bins != base.bins ||
            cfg.support_observed != base.support_observed)
            throw ArgumentError("compare: methods must share the discretization");
        if (cfg.transform.kind != TransformKind::Pca && cfg.transform.kind != TransformKind::Ica)
            throw ArgumentError("compare methods must be pca or ica variants");
        if (cfg.transform.log_first != base.transform.log_first)
            throw ArgumentError("compare: methods must share the pre-transform");
    }

    const DataTable table = load_input(base);

    CommandResult result;
    result.warnings = table.warnings;
    PlotSpec spec;
    {
        std::string methods;
        for (std::size_t k = 0; k < configs.size(); ++k)
            methods += (k ? " vs " : "") + to_string(configs[k].transform);
        spec.title = table.name + ": " + methods;
    }
    spec.grid_step = base.grid_step;

    for (std::size_t k = 0; k < configs.size(); ++k) {
        PlotSpec method_spec;
        method_spec.grid_step = base.grid_step;
        CommandResult method_result;
        detail::run_sweep(configs[k], table, method_result, method_spec,
                          Glyph::FilledTriangle, true, k);
        for (const auto& w : method_result.warnings) result.warnings.push_back(w);
        result.rows.insert(result.rows.end(), method_result.rows.begin(),
                           method_result.rows.end());
        for (const PlotPoint& p : method_spec.points)
            if (p.glyph == Glyph::FilledTriangle) spec.points.push_back(p);
        if (method_result.step_error && !result.step_error)
            result.step_error = method_result.step_error;
    }

    // Reference point: the deterministic pre-transform (log when the methods
    // use it, otherwise the identity) against the raw features.
    {
        const std::size_t bins = base.bins ? base.bins : default_bins(table.rows);
        std::vector<std::string> feature_names;
        const Matrix raw = detail::numeric_features(table, &feature_names);
        const detail::EncodedBlock xb = detail::encode_table_columns(
            table, table.feature_indices(), base.strategy, bins);

        Matrix ref = raw;
        std::string ref_name = "identity";
        std::string prefix = "id_";
        if (base.transform.log_first) {
            ref = log_transform(raw, base.log_shift).data;
            ref_name = "log";
            prefix = "log_";
        }
        std::vector<std::string> ref_names;
        for (const std::string& name : feature_names) ref_names.push_back(prefix + name);
        detail::EncodedBlock yb =
            detail::encode_matrix_columns(ref, ref_names, base.strategy, bins);

        auto [joint, part] = detail::joint_from_blocks(xb, yb);
        if (base.support_observed) joint = compact_support(joint);
        const auto rows =
            detail::balance_rows(table.name, ref_name, raw.cols(), joint, part);
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        spec.points.push_back(
            {detail::coord_from_row(rows[2]), "ref", Glyph::Cross, "#222222"});
    }

    detail::emit_outputs(base, result, &spec);
    if (result.step_error) std::rethrow_exception(result.step_error);
    return result;
}

/// Re-renders a coordinates report. Aggregate plots show XY rows as filled
/// circles; split plots show X rows as crosses and Y rows as circles.
inline CommandResult cmd_plot(const RunConfig& cfg, const std::string& report_path,
                              const std::string& kind) {
    if (kind != "aggregate" && kind != "split")
        throw ArgumentError("unknown plot kind '" + kind + "' (expected aggregate or split)");

    CommandResult result;
    result.rows = read_report(report_path);

    std::vector<std::string> series;
    const auto series_color = [&](const std::string& transform) {
        const auto it = std::find(series.begin(), series.end(), transform);
        const std::size_t k =
            it == series.end() ? (series.push_back(transform), series.size() - 1)
                               : static_cast<std::size_t>(it - series.begin());
        return std::string(kSeriesPalette[k % 10]);
    };

    PlotSpec spec;
    spec.grid_step = cfg.grid_step;
    std::set<std::string> datasets;
    for (const ReportRow& r : result.rows) {
        datasets.insert(r.dataset);
        const bool aggregate_row = r.side == "XY";
        if (aggregate_row != (kind == "aggregate")) continue;
        const std::string color = series_color(r.transform);
        const std::string label =
            r.i ? r.transform + "_" + std::to_string(r.i) : r.transform;
        const TriangleCoord c = detail::coord_from_row(r);
        if (aggregate_row)
            spec.points.push_back({c, label, Glyph::FilledCircle, color});
        else
            spec.points.push_back(
                {c, label, r.side == "X" ? Glyph::Cross : Glyph::Circle, color});
    }
    {
        std::string title;
        for (const std::string& d : datasets) title += (title.empty() ? "" : "+") + d;
        spec.title = title.empty() ? std::string("entropy triangle") : title + " (" + kind + ")";
    }

    result.svg = render_svg(spec);
    if (!cfg.out_svg.empty()) write_text_file(cfg.out_svg, result.svg);
    result.report_csv = report_to_csv(result.rows);
    return result;
}

}  // namespace entri
