#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "entri/joint.hpp"

namespace entri {

inline constexpr double kIdentityTolerance = 1e-9;

/// Relative comparison with a one-bit scale floor, so near-zero quantities are
/// compared absolutely.
inline bool close_scaled(double a, double b, double tol = kIdentityTolerance) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

/// Bivariate-style mutual information between the two blocks,
/// H(X) + H(Y) - H(XY).
inline double mutual_information(const JointDistribution& joint, const Partition& part) {
    part.validate(joint);
    return entropy(marginalize(joint, part.x_vars)) + entropy(marginalize(joint, part.y_vars)) -
           entropy(joint);
}

/// Channel variation of information H(X|Y) + H(Y|X) and its two addends.
struct ChannelVariation {
    double h_x_given_y = 0.0;
    double h_y_given_x = 0.0;
    double total = 0.0;
};

inline ChannelVariation variation_of_information_channel(const JointDistribution& joint,
                                                         const Partition& part) {
    part.validate(joint);
    ChannelVariation v;
    v.h_x_given_y = conditional_entropy(joint, part, Direction::XGivenY);
    v.h_y_given_x = conditional_entropy(joint, part, Direction::YGivenX);
    v.total = v.h_x_given_y + v.h_y_given_x;
    return v;
}

/// The three equivalent routes to the binding information between the blocks:
/// conditioning away the private entropies, the entropy lost when the product
/// of marginals is bound into the joint, and the KL divergence from the
/// product of block marginals.
struct BindingRoutes {
    double internal = 0.0;
    double external = 0.0;
    double divergence = 0.0;
};

inline BindingRoutes binding_information_routes(const JointDistribution& joint,
                                                const Partition& part) {
    part.validate(joint);
    BindingRoutes r;

    const ChannelVariation vi = variation_of_information_channel(joint, part);
    r.internal = entropy(joint) - vi.total;

    const JointDistribution marg_x = marginalize(joint, part.x_vars);
    const JointDistribution marg_y = marginalize(joint, part.y_vars);
    r.external = entropy(marg_x) + entropy(marg_y) - entropy(joint);

    // KL sum over the joint support against the product of block marginals.
    CodeTuple xt(part.x_vars.size()), yt(part.y_vars.size());
    std::vector<std::size_t> xs = part.x_vars, ys = part.y_vars;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double kl = 0.0;
    for (const auto& [tuple, p] : joint.mass()) {
        for (std::size_t k = 0; k < xs.size(); ++k) xt[k] = tuple[xs[k]];
        for (std::size_t k = 0; k < ys.size(); ++k) yt[k] = tuple[ys[k]];
        kl += p * std::log2(p / (marg_x.mass().at(xt) * marg_y.mass().at(yt)));
    }
    r.divergence = kl;
    return r;
}

/// Binding information with the three routes cross-checked; returns the
/// conditioning-route value. Disagreement beyond tolerance signals numeric
/// corruption and is an internal error.
inline double binding_information(const JointDistribution& joint, const Partition& part) {
    const BindingRoutes r = binding_information_routes(joint, part);
    if (!close_scaled(r.internal, r.external) || !close_scaled(r.internal, r.divergence)) {
        std::ostringstream os;
        os << "binding-information routes disagree: internal=" << r.internal
           << " external=" << r.external << " divergence=" << r.divergence;
        throw InternalError(os.str());
    }
    return r.internal;
}

/// Per-block and total divergence from uniformity.
struct DeltaUniformity {
    double delta_x = 0.0;
    double delta_y = 0.0;
    double total = 0.0;
};

inline DeltaUniformity delta_uniformity(const JointDistribution& joint, const Partition& part) {
    part.validate(joint);
    DeltaUniformity d;
    d.delta_x = uniform_entropy(joint, part.x_vars) - entropy(marginalize(joint, part.x_vars));
    d.delta_y = uniform_entropy(joint, part.y_vars) - entropy(marginalize(joint, part.y_vars));
    d.total = d.delta_x + d.delta_y;
    return d;
}

/// Total correlation, sum of marginal entropies minus the joint entropy.
inline double total_correlation(const JointDistribution& joint) {
    double h_pi = 0.0;
    for (std::size_t v = 0; v < joint.variable_count(); ++v)
        h_pi += entropy(marginalize(joint, {v}));
    return h_pi - entropy(joint);
}

/// Multivariate source variation of information, sum over variables of the
/// entropy left after conditioning on all the others. A single variable keeps
/// its full entropy.
inline double source_vi(const JointDistribution& joint) {
    const std::size_t n = joint.variable_count();
    if (n == 1) return entropy(joint);
    const double h_joint = entropy(joint);
    double vi = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> rest;
        for (std::size_t w = 0; w < n; ++w)
            if (w != v) rest.push_back(w);
        vi += h_joint - entropy(marginalize(joint, rest));
    }
    return vi;
}

/// Dual total correlation, joint entropy minus the source variation of
/// information.
inline double dual_total_correlation(const JointDistribution& joint) {
    return entropy(joint) - source_vi(joint);
}

/// Bound information, the sum of total correlation and dual total correlation.
inline double bound_information(const JointDistribution& joint) {
    return total_correlation(joint) + dual_total_correlation(joint);
}

/// Literal multiinformation sum over the support, sum of P log2(P / prod of
/// marginals). Always equals the total correlation; checked here because both
/// are exposed.
inline double kl_multiinformation(const JointDistribution& joint) {
    const std::size_t n = joint.variable_count();
    std::vector<JointDistribution> margs;
    margs.reserve(n);
    for (std::size_t v = 0; v < n; ++v) margs.push_back(marginalize(joint, {v}));
    double kl = 0.0;
    for (const auto& [tuple, p] : joint.mass()) {
        double prod = 1.0;
        for (std::size_t v = 0; v < n; ++v) prod *= margs[v].mass().at({tuple[v]});
        kl += p * std::log2(p / prod);
    }
    const double c = total_correlation(joint);
    if (!close_scaled(kl, c)) {
        std::ostringstream os;
        os << "multiinformation " << kl << " disagrees with total correlation " << c;
        throw InternalError(os.str());
    }
    return kl;
}

/// Signed co-information via inclusion-exclusion over subset entropies,
/// sum over non-empty S of (-1)^(|S|+1) H(S). Equals mutual information for
/// two variables and may be negative beyond that.
inline double co_information(const JointDistribution& joint) {
    const std::size_t n = joint.variable_count();
    if (n < 2) throw ArgumentError("co-information needs at least two variables");
    if (n > 20)
        throw ArgumentError("co-information over " + std::to_string(n) +
                            " variables: subset enumeration refused, sub-select first");
    double acc = 0.0;
    for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < n; ++v)
            if (subset & (1u << v)) keep.push_back(v);
        const double h = entropy(marginalize(joint, keep));
        acc += (keep.size() % 2 == 1) ? h : -h;
    }
    return acc;
}

/// The multivariate source measures of a set of variables taken as one block.
struct SourceDecomposition {
    double h_joint = 0.0;
    double h_pi = 0.0;
    double total_correlation = 0.0;
    double dual_total_correlation = 0.0;
    double source_vi = 0.0;
    double bound_information = 0.0;
    double co_information = 0.0;
};

inline SourceDecomposition source_decomposition(const JointDistribution& joint) {
    SourceDecomposition d;
    d.h_joint = entropy(joint);
    d.h_pi = 0.0;
    for (std::size_t v = 0; v < joint.variable_count(); ++v)
        d.h_pi += entropy(marginalize(joint, {v}));
    d.total_correlation = d.h_pi - d.h_joint;
    d.source_vi = source_vi(joint);
    d.dual_total_correlation = d.h_joint - d.source_vi;
    d.bound_information = d.total_correlation + d.dual_total_correlation;
    d.co_information = joint.variable_count() >= 2 ? co_information(joint) : d.h_joint;
    return d;
}

}  // namespace entri
