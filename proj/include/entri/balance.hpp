#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entri/measures.hpp"

namespace entri {

inline constexpr double kNegativeDust = 1e-12;

enum class Side { X, Y };

enum class CoordKind { Aggregate, SplitX, SplitY };

inline std::string to_string(Side s) { return s == Side::X ? "X" : "Y"; }

inline std::string to_string(CoordKind k) {
    switch (k) {
        case CoordKind::Aggregate: return "XY";
        case CoordKind::SplitX: return "X";
        case CoordKind::SplitY: return "Y";
    }
    return "?";
}

/// Aggregate balance of a partitioned joint: H_U = ΔH + 2·I + VI.
struct ChannelDecomposition {
    double h_u_total = 0.0;
    double delta_h = 0.0;
    double binding = 0.0;
    double vi = 0.0;
};

/// One side of the split balance: H_U_side = ΔH_side + I + H(side|other).
struct SplitDecomposition {
    Side side = Side::X;
    double h_u = 0.0;
    double delta_h = 0.0;
    double binding = 0.0;
    double h_cond = 0.0;
};

/// Barycentric coordinates on the entropy triangle. The information part
/// stores 2I' for aggregate coordinates and I' for split coordinates.
struct TriangleCoord {
    double delta_prime = 0.0;
    double info_prime = 0.0;
    double vi_prime = 0.0;
    CoordKind kind = CoordKind::Aggregate;
};

namespace detail {

/// Clamps floating-point dust out of a quantity that is nonnegative by
/// theory. Anything below -1e-12 is corruption, not dust.
inline double clamp_dust(double v, const char* what) {
    if (v < -kNegativeDust) {
        std::ostringstream os;
        os << what << " is negative beyond tolerance: " << v;
        throw InternalError(os.str());
    }
    return v < 0.0 ? 0.0 : v;
}

inline double clamp_fraction(double v, const char* what) {
    v = clamp_dust(v, what);
    if (v > 1.0 + kNegativeDust) {
        std::ostringstream os;
        os << what << " exceeds 1 beyond tolerance: " << v;
        throw InternalError(os.str());
    }
    return v > 1.0 ? 1.0 : v;
}

}  // namespace detail

inline ChannelDecomposition channel_balance(const JointDistribution& joint,
                                            const Partition& part) {
    part.validate(joint);
    ChannelDecomposition d;
    d.h_u_total = uniform_entropy(joint, all_variables(joint));
    if (d.h_u_total == 0.0)
        throw DataError("degenerate domain: all cardinalities are 1, H_U = 0");
    d.delta_h = delta_uniformity(joint, part).total;
    d.binding = binding_information(joint, part);
    d.vi = variation_of_information_channel(joint, part).total;
    return d;
}

inline std::pair<SplitDecomposition, SplitDecomposition> split_balance(
        const JointDistribution& joint, const Partition& part) {
    part.validate(joint);
    const double h_u_x = uniform_entropy(joint, part.x_vars);
    const double h_u_y = uniform_entropy(joint, part.y_vars);
    if (h_u_x == 0.0 || h_u_y == 0.0)
        throw DataError(std::string("degenerate domain: the ") +
                        (h_u_x == 0.0 ? "X" : "Y") + " side has H_U = 0");

    const DeltaUniformity delta = delta_uniformity(joint, part);
    const double binding = binding_information(joint, part);
    const ChannelVariation vi = variation_of_information_channel(joint, part);

    SplitDecomposition x;
    x.side = Side::X;
    x.h_u = h_u_x;
    x.delta_h = delta.delta_x;
    x.binding = binding;
    x.h_cond = vi.h_x_given_y;

    SplitDecomposition y;
    y.side = Side::Y;
    y.h_u = h_u_y;
    y.delta_h = delta.delta_y;
    y.binding = binding;
    y.h_cond = vi.h_y_given_x;

    return {x, y};
}

inline TriangleCoord normalize_aggregate(const ChannelDecomposition& d) {
    if (d.h_u_total <= 0.0)
        throw DataError("degenerate domain: cannot normalize with H_U = 0");
    TriangleCoord c;
    c.kind = CoordKind::Aggregate;
    c.delta_prime = detail::clamp_fraction(d.delta_h / d.h_u_total, "delta'");
    c.info_prime = detail::clamp_fraction(2.0 * d.binding / d.h_u_total, "2I'");
    c.vi_prime = detail::clamp_fraction(d.vi / d.h_u_total, "VI'");
    return c;
}

inline TriangleCoord normalize_split(const SplitDecomposition& d) {
    if (d.h_u <= 0.0)
        throw DataError("degenerate domain: cannot normalize with H_U = 0");
    TriangleCoord c;
    c.kind = d.side == Side::X ? CoordKind::SplitX : CoordKind::SplitY;
    c.delta_prime = detail::clamp_fraction(d.delta_h / d.h_u, "delta'");
    c.info_prime = detail::clamp_fraction(d.binding / d.h_u, "I'");
    c.vi_prime = detail::clamp_fraction(d.h_cond / d.h_u, "VI'");
    return c;
}

/// Result of evaluating a classifier confusion matrix on the entropy
/// triangle: the bivariate joint over (actual, predicted), its aggregate and
/// split decompositions, and the three triangle coordinates.
struct CbetResult {
    ChannelDecomposition channel;
    SplitDecomposition split_x;
    SplitDecomposition split_y;
    TriangleCoord aggregate;
    TriangleCoord coord_x;
    TriangleCoord coord_y;
};

/// Evaluates a k-class confusion matrix (rows = actual class, columns =
/// predicted class, entries = counts) on the entropy triangle.
inline CbetResult cbet_from_confusion(const std::vector<std::vector<std::uint64_t>>& counts) {
    const std::size_t k = counts.size();
    if (k == 0) throw ArgumentError("confusion matrix is empty");
    for (std::size_t r = 0; r < k; ++r)
        if (counts[r].size() != k)
            throw ArgumentError("confusion matrix is not square: row " + std::to_string(r) +
                                " has " + std::to_string(counts[r].size()) + " columns, expected " +
                                std::to_string(k));

    std::map<CodeTuple, std::uint64_t> cells;
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
            if (counts[r][c] > 0) {
                cells[{static_cast<Code>(r), static_cast<Code>(c)}] = counts[r][c];
                total += counts[r][c];
            }
    if (total == 0) throw DataError("confusion matrix has no observations");

    const JointDistribution joint(std::vector<std::string>{"actual", "predicted"},
                                  std::vector<std::size_t>{k, k}, cells, total);
    const Partition part{{0}, {1}};

    CbetResult r;
    r.channel = channel_balance(joint, part);
    auto [sx, sy] = split_balance(joint, part);
    r.split_x = sx;
    r.split_y = sy;
    r.aggregate = normalize_aggregate(r.channel);
    r.coord_x = normalize_split(r.split_x);
    r.coord_y = normalize_split(r.split_y);
    return r;
}

enum class Region { Faithful, Randomizing, Rigid, Intermediate };

inline std::string to_string(Region r) {
    switch (r) {
        case Region::Faithful: return "faithful";
        case Region::Randomizing: return "randomizing";
        case Region::Rigid: return "rigid";
        case Region::Intermediate: return "intermediate";
    }
    return "?";
}

/// Labels the triangle region a coordinate falls in. A part must dominate by
/// at least `threshold` to earn a vertex label; thresholds at or below 1/3
/// would be ambiguous.
inline Region classify_region(const TriangleCoord& c, double threshold = 0.8) {
    if (!(threshold > 1.0 / 3.0) || threshold > 1.0)
        throw ArgumentError("region threshold must lie in (1/3, 1]");
    if (c.info_prime >= threshold) return Region::Faithful;
    if (c.vi_prime >= threshold) return Region::Randomizing;
    if (c.delta_prime >= threshold) return Region::Rigid;
    return Region::Intermediate;
}

}  // namespace entri
