#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entri/datasets/iris_data.hpp"
#include "entri/error.hpp"

namespace entri {

enum class ColumnKind { Numeric, Categorical };
enum class ColumnRole { Feature, Class };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    ColumnRole role = ColumnRole::Feature;
    std::vector<double> numeric;
    std::vector<std::string> labels;

    std::size_t size() const {
        return kind == ColumnKind::Numeric ? numeric.size() : labels.size();
    }
};

struct DataTable {
    std::string name;
    std::vector<Column> columns;
    std::size_t rows = 0;
    std::vector<std::string> warnings;

    const Column* class_column() const {
        for (const Column& c : columns)
            if (c.role == ColumnRole::Class) return &c;
        return nullptr;
    }

    std::vector<std::size_t> feature_indices() const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i].role == ColumnRole::Feature) idx.push_back(i);
        return idx;
    }

    std::size_t column_index(const std::string& column_name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i].name == column_name) return i;
        std::ostringstream os;
        os << "unknown column '" << column_name << "' (available:";
        for (const Column& c : columns) os << ' ' << c.name;
        os << ')';
        throw ArgumentError(os.str());
    }

    void validate() const {
        std::size_t classes = 0;
        for (const Column& c : columns) {
            if (c.size() != rows)
                throw InternalError("table is not rectangular: column " + c.name + " has " +
                                    std::to_string(c.size()) + " rows, expected " +
                                    std::to_string(rows));
            if (c.role == ColumnRole::Class) ++classes;
            if (c.kind == ColumnKind::Numeric)
                for (std::size_t r = 0; r < c.numeric.size(); ++r)
                    if (!std::isfinite(c.numeric[r]))
                        throw DataError("non-finite value at row " + std::to_string(r) +
                                        " in column " + c.name);
        }
        if (classes > 1) throw DataError("more than one class column");
    }
};

enum class NaPolicy { Fail, DropRow };

struct CsvOptions {
    bool has_header = true;
    char delimiter = ',';
    std::string class_column;
    NaPolicy na_policy = NaPolicy::Fail;
    std::map<std::string, ColumnKind> kind_overrides;
};

namespace detail {

inline bool is_na_token(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "N/A" || cell == "?" || cell == "nan" ||
           cell == "NaN" || cell == "null";
}

inline std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + cell.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

/// RFC-4180-style record split: quoted fields may contain delimiters,
/// doubled quotes, and line breaks.
inline std::vector<std::vector<std::string>> parse_csv_records(const std::string& text,
                                                               char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, any = false;

    const auto end_field = [&] {
        record.push_back(field);
        field.clear();
        any = true;
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(record);
        record.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"' && field.empty()) {
            quoted = true;
            any = true;
        } else if (ch == delimiter) {
            end_field();
        } else if (ch == '\n') {
            if (!field.empty() || any || !record.empty()) end_record();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (quoted) throw DataError("parse error: unterminated quoted field");
    if (!field.empty() || any || !record.empty()) end_record();
    return records;
}

}  // namespace detail

inline DataTable load_csv(const std::string& path, const CsvOptions& options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    const auto records = detail::parse_csv_records(buffer.str(), options.delimiter);
    if (records.empty()) throw DataError("empty input: " + path + " has no rows");

    const std::size_t width = records.front().size();
    for (std::size_t r = 1; r < records.size(); ++r)
        if (records[r].size() != width)
            throw DataError("parse error at line " + std::to_string(r + 1) + ": " +
                            std::to_string(records[r].size()) + " fields, expected " +
                            std::to_string(width));

    DataTable table;
    {
        std::string stem = path;
        if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
            stem = stem.substr(slash + 1);
        if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
            stem = stem.substr(0, dot);
        table.name = stem;
    }

    std::vector<std::string> names(width);
    std::size_t first_data = 0;
    if (options.has_header) {
        if (records.size() < 2) throw DataError("empty input: " + path + " has a header only");
        names = records.front();
        first_data = 1;
    } else {
        for (std::size_t c = 0; c < width; ++c) names[c] = "v" + std::to_string(c);
    }
    const std::size_t m = records.size() - first_data;

    std::vector<ColumnKind> kinds(width, ColumnKind::Numeric);
    for (std::size_t c = 0; c < width; ++c) {
        if (const auto it = options.kind_overrides.find(names[c]);
            it != options.kind_overrides.end()) {
            kinds[c] = it->second;
            continue;
        }
        bool numeric_seen = false, ok = true;
        for (std::size_t r = 0; r < m; ++r) {
            const std::string& cell = records[first_data + r][c];
            if (detail::is_na_token(cell)) continue;
            if (detail::parse_number(cell)) {
                numeric_seen = true;
            } else {
                ok = false;
                break;
            }
        }
        kinds[c] = ok && numeric_seen ? ColumnKind::Numeric : ColumnKind::Categorical;
    }

    std::vector<bool> keep(m, true);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::string& cell = records[first_data + r][c];
            const bool missing = detail::is_na_token(cell) ||
                                 (kinds[c] == ColumnKind::Numeric &&
                                  !detail::parse_number(cell));
            if (!missing) continue;
            if (options.na_policy == NaPolicy::Fail)
                throw DataError("missing or unparseable value at line " +
                                std::to_string(first_data + r + 1) + ", column " + names[c]);
            keep[r] = false;
            table.warnings.push_back("dropped line " + std::to_string(first_data + r + 1) +
                                     ": missing value in column " + names[c]);
            break;
        }
    }

    table.columns.resize(width);
    for (std::size_t c = 0; c < width; ++c) {
        Column& col = table.columns[c];
        col.name = names[c];
        col.kind = kinds[c];
        for (std::size_t r = 0; r < m; ++r) {
            if (!keep[r]) continue;
            const std::string& cell = records[first_data + r][c];
            if (col.kind == ColumnKind::Numeric)
                col.numeric.push_back(*detail::parse_number(cell));
            else
                col.labels.push_back(cell);
        }
    }
    table.rows = table.columns.empty() ? 0 : table.columns.front().size();
    if (table.rows == 0) throw DataError("empty input: no usable rows in " + path);

    if (!options.class_column.empty()) {
        const std::size_t ci = table.column_index(options.class_column);
        Column& cls = table.columns[ci];
        cls.role = ColumnRole::Class;
        if (cls.kind == ColumnKind::Numeric) {
            cls.kind = ColumnKind::Categorical;
            for (std::size_t r = 0; r < m; ++r)
                if (keep[r]) cls.labels.push_back(records[first_data + r][ci]);
            cls.numeric.clear();
        }
    }

    table.validate();
    return table;
}

inline std::string format_number(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InternalError("number formatting failed");
    return std::string(buf, ptr);
}

inline void write_csv(const DataTable& table, const std::string& path, char delimiter = ',') {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);

    const auto escape = [&](const std::string& cell) {
        if (cell.find_first_of(std::string("\"\n") + delimiter) == std::string::npos) return cell;
        std::string quoted = "\"";
        for (char ch : cell) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + "\"";
    };

    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? std::string(1, delimiter) : "") << escape(table.columns[c].name);
    out << '\n';
    for (std::size_t r = 0; r < table.rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const Column& col = table.columns[c];
            if (c) out << delimiter;
            out << (col.kind == ColumnKind::Numeric ? format_number(col.numeric[r])
                                                    : escape(col.labels[r]));
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

inline DataTable builtin(const std::string& name) {
    if (name != "iris")
        throw ArgumentError("unknown built-in dataset '" + name + "' (available: iris)");

    DataTable table;
    table.name = "iris";
    table.rows = datasets::kIrisRows;
    const char* feature_names[4] = {"sepal_length", "sepal_width", "petal_length", "petal_width"};
    for (std::size_t j = 0; j < 4; ++j) {
        Column col;
        col.name = feature_names[j];
        col.kind = ColumnKind::Numeric;
        col.numeric.reserve(datasets::kIrisRows);
        for (std::size_t i = 0; i < datasets::kIrisRows; ++i)
            col.numeric.push_back(datasets::kIrisFeatures[i][j]);
        table.columns.push_back(std::move(col));
    }
    Column species;
    species.name = "species";
    species.kind = ColumnKind::Categorical;
    species.role = ColumnRole::Class;
    species.labels.reserve(datasets::kIrisRows);
    for (std::size_t i = 0; i < datasets::kIrisRows; ++i)
        species.labels.emplace_back(datasets::kIrisSpeciesNames[datasets::kIrisSpecies[i]]);
    table.columns.push_back(std::move(species));

    table.validate();
    return table;
}

struct DatasetSchema {
    std::string name;
    std::string class_column;
    std::map<std::string, ColumnKind> kinds;
};

inline DatasetSchema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("schema " + path + " is not valid JSON: " + e.what());
    }

    DatasetSchema schema;
    schema.name = doc.value("name", "");
    schema.class_column = doc.value("class_column", "");
    if (doc.contains("columns")) {
        for (const auto& [column, kind] : doc.at("columns").items()) {
            const std::string k = kind.get<std::string>();
            if (k == "numeric")
                schema.kinds[column] = ColumnKind::Numeric;
            else if (k == "categorical")
                schema.kinds[column] = ColumnKind::Categorical;
            else
                throw DataError("schema " + path + ": column " + column + " has unknown kind '" +
                                k + "'");
        }
    }
    return schema;
}

inline void save_schema(const DataTable& table, const std::string& path) {
    nlohmann::json doc;
    doc["name"] = table.name;
    const Column* cls = table.class_column();
    doc["class_column"] = cls ? cls->name : "";
    nlohmann::json columns = nlohmann::json::object();
    for (const Column& c : table.columns)
        columns[c.name] = c.kind == ColumnKind::Numeric ? "numeric" : "categorical";
    doc["columns"] = columns;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write schema " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace entri
