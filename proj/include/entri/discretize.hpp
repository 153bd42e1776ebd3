#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "entri/joint.hpp"

namespace entri {

enum class DiscStrategy { EqualWidth, EqualFrequency };

inline DiscStrategy parse_strategy(const std::string& s) {
    if (s == "equal-width") return DiscStrategy::EqualWidth;
    if (s == "equal-frequency") return DiscStrategy::EqualFrequency;
    throw ArgumentError("unknown discretization strategy '" + s +
                        "' (expected equal-width or equal-frequency)");
}

/// Default bin count for m rows: ceil(sqrt(m)), capped at 32 to keep joint
/// supports manageable.
inline std::size_t default_bins(std::size_t m) {
    const auto b = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    return std::min<std::size_t>(std::max<std::size_t>(b, 2), 32);
}

/// Per-variable coding rule. Binned codebooks keep the interior cut points;
/// code(x) counts the cuts at or below x, so bins are half-open on the right
/// with the last one unbounded.
struct Codebook {
    enum class Kind { Binned, Categorical };

    std::string variable;
    Kind kind = Kind::Binned;
    std::vector<double> boundaries;
    std::vector<std::string> categories;
    std::size_t cardinality = 1;
    bool degenerate = false;

    Code code_for(double x) const {
        const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), x);
        return static_cast<Code>(it - boundaries.begin());
    }

    /// Interval of values a code maps from; open-ended at the extremes.
    std::pair<double, double> bin_range(Code code) const {
        const double lo = code == 0 ? -std::numeric_limits<double>::infinity()
                                    : boundaries[code - 1];
        const double hi = code + 1 >= cardinality ? std::numeric_limits<double>::infinity()
                                                  : boundaries[code];
        return {lo, hi};
    }
};

struct DiscretizeResult {
    Codebook codebook;
    std::vector<Code> codes;
};

inline DiscretizeResult fit_discretize(const std::vector<double>& column, DiscStrategy strategy,
                                       std::size_t bins, const std::string& name = "") {
    if (bins < 2) throw ArgumentError("bin count must be at least 2");
    if (column.empty()) throw DataError("empty input: column " + name + " has no rows");
    for (std::size_t r = 0; r < column.size(); ++r)
        if (!std::isfinite(column[r]))
            throw DataError("non-finite value at row " + std::to_string(r) + " in column " +
                            name);

    DiscretizeResult res;
    res.codebook.variable = name;
    res.codebook.kind = Codebook::Kind::Binned;

    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();

    if (lo == hi) {
        res.codebook.cardinality = 1;
        res.codebook.degenerate = true;
        res.codes.assign(column.size(), 0);
        return res;
    }

    std::vector<double>& cuts = res.codebook.boundaries;
    if (strategy == DiscStrategy::EqualWidth) {
        const double width = (hi - lo) / static_cast<double>(bins);
        for (std::size_t j = 1; j < bins; ++j) cuts.push_back(lo + width * static_cast<double>(j));
    } else {
        const std::size_t m = sorted.size();
        for (std::size_t j = 1; j < bins; ++j) cuts.push_back(sorted[j * m / bins]);
    }
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    res.codebook.cardinality = cuts.size() + 1;
    res.codebook.degenerate = res.codebook.cardinality == 1;

    res.codes.reserve(column.size());
    for (double x : column) res.codes.push_back(res.codebook.code_for(x));
    return res;
}

inline DiscretizeResult encode_categorical(const std::vector<std::string>& column,
                                           const std::string& name = "") {
    if (column.empty()) throw DataError("empty input: column " + name + " has no rows");

    DiscretizeResult res;
    res.codebook.variable = name;
    res.codebook.kind = Codebook::Kind::Categorical;

    const std::set<std::string> uniq(column.begin(), column.end());
    res.codebook.categories.assign(uniq.begin(), uniq.end());
    res.codebook.cardinality = res.codebook.categories.size();

    res.codes.reserve(column.size());
    for (const std::string& label : column) {
        const auto it = std::lower_bound(res.codebook.categories.begin(),
                                         res.codebook.categories.end(), label);
        res.codes.push_back(static_cast<Code>(it - res.codebook.categories.begin()));
    }
    return res;
}

}  // namespace entri
