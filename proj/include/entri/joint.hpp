#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entri/error.hpp"

namespace entri {

using Code = std::uint32_t;
using CodeTuple = std::vector<Code>;

inline constexpr double kSumTolerance = 1e-12;

/// Sparse probability mass over tuples of discrete codes, with per-variable
/// domain cardinalities. Joint domains are never materialized densely.
///
/// Empirical distributions built by counting additionally carry exact integer
/// counts; entropies and marginals then evaluate from the counts, so a
/// marginal's entropy does not depend on which other variables were attached
/// when it was computed.
class JointDistribution {
public:
    JointDistribution(std::vector<std::string> variables,
                      std::vector<std::size_t> cardinalities,
                      std::map<CodeTuple, double> mass)
        : variables_(std::move(variables)),
          cardinalities_(std::move(cardinalities)),
          mass_(std::move(mass)) {
        validate();
    }

    /// Empirical distribution: mass(t) = counts(t) / total.
    JointDistribution(std::vector<std::string> variables,
                      std::vector<std::size_t> cardinalities,
                      std::map<CodeTuple, std::uint64_t> counts,
                      std::uint64_t total)
        : variables_(std::move(variables)),
          cardinalities_(std::move(cardinalities)),
          counts_(std::move(counts)),
          total_(total) {
        if (total_ == 0) throw DataError("empty input: total count is zero");
        for (auto it = counts_->begin(); it != counts_->end();) {
            it = it->second == 0 ? counts_->erase(it) : std::next(it);
        }
        for (const auto& [tuple, c] : *counts_) {
            mass_[tuple] = static_cast<double>(c) / static_cast<double>(total_);
        }
        validate();
    }

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<std::size_t>& cardinalities() const { return cardinalities_; }
    const std::map<CodeTuple, double>& mass() const { return mass_; }
    std::size_t variable_count() const { return variables_.size(); }
    std::size_t support_size() const { return mass_.size(); }

    bool has_counts() const { return counts_.has_value(); }
    const std::map<CodeTuple, std::uint64_t>& counts() const { return *counts_; }
    std::uint64_t total_count() const { return total_; }

private:
    void validate() const {
        if (variables_.empty()) throw ArgumentError("joint distribution needs at least one variable");
        if (variables_.size() != cardinalities_.size())
            throw ArgumentError("variable/cardinality count mismatch");
        for (std::size_t v = 0; v < cardinalities_.size(); ++v) {
            if (cardinalities_[v] < 1)
                throw ArgumentError("cardinality of '" + variables_[v] + "' must be >= 1");
        }
        double sum = 0.0;
        for (const auto& [tuple, p] : mass_) {
            if (tuple.size() != variables_.size())
                throw ArgumentError("tuple width does not match variable count");
            if (!(p > 0.0)) throw ArgumentError("sparse mass entries must be positive");
            for (std::size_t v = 0; v < tuple.size(); ++v) {
                if (tuple[v] >= cardinalities_[v]) {
                    std::ostringstream os;
                    os << "code " << tuple[v] << " out of range for variable '"
                       << variables_[v] << "' (cardinality " << cardinalities_[v] << ")";
                    throw DataError(os.str());
                }
            }
            sum += p;
        }
        if (mass_.empty()) throw DataError("empty input: distribution has no support");
        if (std::abs(sum - 1.0) > kSumTolerance)
            throw ArgumentError("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }

    std::vector<std::string> variables_;
    std::vector<std::size_t> cardinalities_;
    std::map<CodeTuple, double> mass_;
    std::optional<std::map<CodeTuple, std::uint64_t>> counts_;
    std::uint64_t total_ = 0;
};

/// Disjoint index sets naming the X block and the Y block of a joint.
struct Partition {
    std::vector<std::size_t> x_vars;
    std::vector<std::size_t> y_vars;

    void validate(const JointDistribution& joint) const {
        if (x_vars.empty() || y_vars.empty())
            throw ArgumentError("both partition blocks must be non-empty");
        std::set<std::size_t> seen;
        for (std::size_t v : x_vars) {
            if (v >= joint.variable_count()) throw ArgumentError("partition index out of range");
            if (!seen.insert(v).second) throw ArgumentError("partition blocks overlap");
        }
        for (std::size_t v : y_vars) {
            if (v >= joint.variable_count()) throw ArgumentError("partition index out of range");
            if (!seen.insert(v).second) throw ArgumentError("partition blocks overlap");
        }
        if (seen.size() != joint.variable_count())
            throw ArgumentError("partition must cover every variable of the joint");
    }
};

enum class Direction { XGivenY, YGivenX };

/// Plug-in joint from m rows of integer codes; mass(t) = count(t)/m.
inline JointDistribution build_joint(const std::vector<CodeTuple>& codes,
                                     std::vector<std::size_t> cardinalities,
                                     std::vector<std::string> variables = {}) {
    if (codes.empty()) throw DataError("empty input: no rows to count");
    if (variables.empty()) {
        variables.reserve(cardinalities.size());
        for (std::size_t v = 0; v < cardinalities.size(); ++v)
            variables.push_back("v" + std::to_string(v));
    }
    std::map<CodeTuple, std::uint64_t> counts;
    for (std::size_t r = 0; r < codes.size(); ++r) {
        const CodeTuple& row = codes[r];
        if (row.size() != cardinalities.size())
            throw DataError("row " + std::to_string(r) + " has wrong width");
        for (std::size_t v = 0; v < row.size(); ++v) {
            if (row[v] >= cardinalities[v]) {
                std::ostringstream os;
                os << "code " << row[v] << " out of range at row " << r << ", column " << v
                   << " (cardinality " << cardinalities[v] << ")";
                throw DataError(os.str());
            }
        }
        ++counts[row];
    }
    return JointDistribution(std::move(variables), std::move(cardinalities),
                             std::move(counts), codes.size());
}

/// Shannon entropy in bits over the sparse support. Empirical joints evaluate
/// the exact form log2(m) - sum(c*log2(c))/m.
inline double entropy(const JointDistribution& joint) {
    if (joint.has_counts()) {
        const double m = static_cast<double>(joint.total_count());
        double acc = 0.0;
        for (const auto& [tuple, c] : joint.counts()) {
            acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
        }
        return std::log2(m) - acc / m;
    }
    double h = 0.0;
    for (const auto& [tuple, p] : joint.mass()) h -= p * std::log2(p);
    return h;
}

namespace detail {

inline std::vector<std::size_t> sorted_unique_keep(const JointDistribution& joint,
                                                   const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw ArgumentError("marginalize: keep set is empty");
    std::vector<std::size_t> idx = keep;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.back() >= joint.variable_count())
        throw ArgumentError("marginalize: unknown variable index");
    return idx;
}

}  // namespace detail

/// Marginal over the kept variables (original variable order preserved).
inline JointDistribution marginalize(const JointDistribution& joint,
                                     const std::vector<std::size_t>& keep) {
    const std::vector<std::size_t> idx = detail::sorted_unique_keep(joint, keep);

    std::vector<std::string> vars;
    std::vector<std::size_t> cards;
    for (std::size_t v : idx) {
        vars.push_back(joint.variables()[v]);
        cards.push_back(joint.cardinalities()[v]);
    }

    CodeTuple reduced(idx.size());
    if (joint.has_counts()) {
        std::map<CodeTuple, std::uint64_t> counts;
        for (const auto& [tuple, c] : joint.counts()) {
            for (std::size_t k = 0; k < idx.size(); ++k) reduced[k] = tuple[idx[k]];
            counts[reduced] += c;
        }
        return JointDistribution(std::move(vars), std::move(cards), std::move(counts),
                                 joint.total_count());
    }
    std::map<CodeTuple, double> mass;
    for (const auto& [tuple, p] : joint.mass()) {
        for (std::size_t k = 0; k < idx.size(); ++k) reduced[k] = tuple[idx[k]];
        mass[reduced] += p;
    }
    return JointDistribution(std::move(vars), std::move(cards), std::move(mass));
}

/// H(A|B) = H(joint) - H(marginal of B), by the chain rule.
inline double conditional_entropy(const JointDistribution& joint, const Partition& part,
                                  Direction direction) {
    part.validate(joint);
    const auto& given = direction == Direction::XGivenY ? part.y_vars : part.x_vars;
    return entropy(joint) - entropy(marginalize(joint, given));
}

/// Entropy of the uniform joint over the product domain of the subset,
/// sum of log2(cardinality) over the subset.
inline double uniform_entropy(const JointDistribution& joint,
                              const std::vector<std::size_t>& subset) {
    const std::vector<std::size_t> idx = detail::sorted_unique_keep(joint, subset);
    double h = 0.0;
    for (std::size_t v : idx) h += std::log2(static_cast<double>(joint.cardinalities()[v]));
    return h;
}

inline std::vector<std::size_t> all_variables(const JointDistribution& joint) {
    std::vector<std::size_t> idx(joint.variable_count());
    for (std::size_t v = 0; v < idx.size(); ++v) idx[v] = v;
    return idx;
}

/// Remap every variable's codes onto its observed support (dense 0..k-1) and
/// shrink the cardinalities accordingly. Entropies are unchanged; uniform
/// reference entropies switch to observed-support counting.
inline JointDistribution compact_support(const JointDistribution& joint) {
    const std::size_t n = joint.variable_count();
    std::vector<std::map<Code, Code>> recode(n);
    for (const auto& [tuple, p] : joint.mass()) {
        for (std::size_t v = 0; v < n; ++v) recode[v].emplace(tuple[v], 0);
    }
    std::vector<std::size_t> cards(n);
    for (std::size_t v = 0; v < n; ++v) {
        Code next = 0;
        for (auto& [code, dense] : recode[v]) dense = next++;
        cards[v] = recode[v].size();
    }
    CodeTuple mapped(n);
    if (joint.has_counts()) {
        std::map<CodeTuple, std::uint64_t> counts;
        for (const auto& [tuple, c] : joint.counts()) {
            for (std::size_t v = 0; v < n; ++v) mapped[v] = recode[v].at(tuple[v]);
            counts.emplace(mapped, c);
        }
        return JointDistribution(joint.variables(), std::move(cards), std::move(counts),
                                 joint.total_count());
    }
    std::map<CodeTuple, double> mass;
    for (const auto& [tuple, p] : joint.mass()) {
        for (std::size_t v = 0; v < n; ++v) mapped[v] = recode[v].at(tuple[v]);
        mass.emplace(mapped, p);
    }
    return JointDistribution(joint.variables(), std::move(cards), std::move(mass));
}

}  // namespace entri
