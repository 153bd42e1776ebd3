#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "entri/dataset.hpp"

namespace entri {

/// One triangle coordinate with its un-normalized balance terms. Aggregate
/// rows (side XY) store 2I in the information columns so that every prime
/// column is its bits column divided by H_U; split rows store I.
struct ReportRow {
    std::string dataset;
    std::string transform;
    std::size_t i = 0;
    std::string side;  // X, Y or XY
    double h_u_bits = 0.0;
    double delta_prime = 0.0;
    double info_prime = 0.0;
    double vi_prime = 0.0;
    double delta_bits = 0.0;
    double info_bits = 0.0;
    double vi_bits = 0.0;
};

inline constexpr const char* kReportHeader =
    "dataset,transform,i,side,H_U_bits,DeltaH_prime,Info_prime,VI_prime,"
    "DeltaH_bits,Info_bits,VI_bits";

inline std::string report_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << kReportHeader << '\n';
    const auto escape = [](const std::string& cell) {
        if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
        std::string quoted = "\"";
        for (char ch : cell) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + "\"";
    };
    for (const ReportRow& r : rows) {
        os << escape(r.dataset) << ',' << escape(r.transform) << ',' << r.i << ',' << r.side
           << ',' << format_number(r.h_u_bits) << ',' << format_number(r.delta_prime) << ','
           << format_number(r.info_prime) << ',' << format_number(r.vi_prime) << ','
           << format_number(r.delta_bits) << ',' << format_number(r.info_bits) << ','
           << format_number(r.vi_bits) << '\n';
    }
    return os.str();
}

inline void write_report(const std::vector<ReportRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << report_to_csv(rows);
    if (!out) throw DataError("write failed: " + path);
}

inline std::vector<ReportRow> read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    const auto records = detail::parse_csv_records(buffer.str(), ',');
    if (records.empty()) throw DataError("empty input: " + path);
    {
        std::ostringstream head;
        for (std::size_t c = 0; c < records.front().size(); ++c)
            head << (c ? "," : "") << records.front()[c];
        if (head.str() != kReportHeader)
            throw DataError(path + " is not a coordinates report (header mismatch)");
    }

    std::vector<ReportRow> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != 11)
            throw DataError("parse error at line " + std::to_string(r + 1) + ": " +
                            std::to_string(rec.size()) + " fields, expected 11");
        const auto num = [&](std::size_t c) {
            const auto v = detail::parse_number(rec[c]);
            if (!v)
                throw DataError("parse error at line " + std::to_string(r + 1) +
                                ": bad number '" + rec[c] + "'");
            return *v;
        };
        ReportRow row;
        row.dataset = rec[0];
        row.transform = rec[1];
        row.i = static_cast<std::size_t>(num(2));
        row.side = rec[3];
        if (row.side != "X" && row.side != "Y" && row.side != "XY")
            throw DataError("parse error at line " + std::to_string(r + 1) + ": bad side '" +
                            rec[3] + "'");
        row.h_u_bits = num(4);
        row.delta_prime = num(5);
        row.info_prime = num(6);
        row.vi_prime = num(7);
        row.delta_bits = num(8);
        row.info_bits = num(9);
        row.vi_bits = num(10);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace entri
