#include <catch2/catch_amalgamated.hpp>

#include "entri/joint.hpp"

using namespace entri;

namespace {

JointDistribution binary_channel() {
    // P(x,y): 0.4 on agreeing pairs, 0.1 on disagreeing ones.
    std::map<CodeTuple, double> mass{
        {{0, 0}, 0.4}, {{0, 1}, 0.1}, {{1, 0}, 0.1}, {{1, 1}, 0.4}};
    return JointDistribution({"x", "y"}, {2, 2}, std::move(mass));
}

JointDistribution xor_triple() {
    std::map<CodeTuple, std::uint64_t> counts{
        {{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}, {{1, 1, 0}, 1}};
    return JointDistribution({"x1", "x2", "y"}, {2, 2, 2}, std::move(counts), 4);
}

}  // namespace

TEST_CASE("entropy of the two-bit uniform is 2 bits") {
    std::map<CodeTuple, std::uint64_t> counts{
        {{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
    const JointDistribution j({"a", "b"}, {2, 2}, std::move(counts), 4);
    CHECK(entropy(j) == 2.0);
}

TEST_CASE("entropy of a hand-computed binary channel") {
    const JointDistribution j = binary_channel();
    CHECK_THAT(entropy(j), Catch::Matchers::WithinAbs(1.7219280948873623, 1e-15));
    const JointDistribution mx = marginalize(j, {0});
    CHECK_THAT(entropy(mx), Catch::Matchers::WithinAbs(1.0, 1e-15));
    const Partition part{{0}, {1}};
    CHECK_THAT(conditional_entropy(j, part, Direction::XGivenY),
               Catch::Matchers::WithinAbs(0.7219280948873623, 1e-12));
}

TEST_CASE("counts constructor rejects an empty total") {
    std::map<CodeTuple, std::uint64_t> counts;
    CHECK_THROWS_AS(JointDistribution({"a"}, {2}, std::move(counts), 0), DataError);
}

TEST_CASE("mass must sum to one") {
    std::map<CodeTuple, double> mass{{{0}, 0.5}, {{1}, 0.4}};
    CHECK_THROWS_AS(JointDistribution({"a"}, {2}, std::move(mass)), ArgumentError);
}

TEST_CASE("codes beyond the cardinality name the variable") {
    std::map<CodeTuple, double> mass{{{0}, 0.5}, {{3}, 0.5}};
    CHECK_THROWS_WITH(JointDistribution({"petal"}, {2}, std::move(mass)),
                      Catch::Matchers::ContainsSubstring("petal"));
}

TEST_CASE("build_joint counts duplicate rows") {
    const std::vector<CodeTuple> rows{{0, 0}, {0, 0}, {1, 1}, {1, 0}};
    const JointDistribution j = build_joint(rows, {2, 2}, {"a", "b"});
    CHECK(j.total_count() == 4);
    CHECK(j.mass().at({0, 0}) == 0.5);
    CHECK(j.support_size() == 3);
}

TEST_CASE("build_joint rejects out-of-range codes with row and column") {
    const std::vector<CodeTuple> rows{{0, 0}, {0, 7}};
    CHECK_THROWS_WITH(build_joint(rows, {2, 2}, {"a", "b"}),
                      Catch::Matchers::ContainsSubstring("row 1") &&
                          Catch::Matchers::ContainsSubstring("column 1"));
}

TEST_CASE("build_joint rejects empty input") {
    CHECK_THROWS_AS(build_joint({}, {2}, {"a"}), DataError);
}

TEST_CASE("marginalize keeps original variable order and counts") {
    const JointDistribution j = xor_triple();
    const JointDistribution m = marginalize(j, {2, 0});
    REQUIRE(m.variables() == std::vector<std::string>{"x1", "y"});
    CHECK(m.has_counts());
    CHECK(m.total_count() == 4);
    CHECK(m.mass().at({0, 0}) == 0.25);
    CHECK(entropy(m) == 2.0);
}

TEST_CASE("marginalize argument checks") {
    const JointDistribution j = xor_triple();
    CHECK_THROWS_AS(marginalize(j, {}), ArgumentError);
    CHECK_THROWS_AS(marginalize(j, {5}), ArgumentError);
}

TEST_CASE("conditional entropies of the xor triple") {
    const JointDistribution j = xor_triple();
    const Partition part{{0, 1}, {2}};
    CHECK(conditional_entropy(j, part, Direction::YGivenX) == 0.0);
    CHECK(conditional_entropy(j, part, Direction::XGivenY) == 1.0);
}

TEST_CASE("uniform entropy multiplies cardinalities") {
    std::map<CodeTuple, double> mass{{{0, 0, 0}, 1.0}};
    const JointDistribution j({"a", "b", "c"}, {3, 4, 5}, std::move(mass));
    CHECK_THAT(uniform_entropy(j, {0, 1, 2}),
               Catch::Matchers::WithinAbs(5.906890595608519, 1e-15));
    CHECK_THAT(uniform_entropy(j, {1}), Catch::Matchers::WithinAbs(2.0, 1e-15));
}

TEST_CASE("partition validation") {
    const JointDistribution j = xor_triple();
    Partition missing{{0}, {2}};
    CHECK_THROWS_AS(missing.validate(j), ArgumentError);
    Partition overlapping{{0, 1}, {1, 2}};
    CHECK_THROWS_AS(overlapping.validate(j), ArgumentError);
    Partition empty_side{{}, {0, 1, 2}};
    CHECK_THROWS_AS(empty_side.validate(j), ArgumentError);
    Partition good{{1, 0}, {2}};
    CHECK_NOTHROW(good.validate(j));
}

TEST_CASE("compact support drops unobserved codes") {
    std::map<CodeTuple, std::uint64_t> counts{{{0, 4}, 2}, {{3, 1}, 2}};
    const JointDistribution j({"a", "b"}, {9, 9}, std::move(counts), 4);
    const JointDistribution c = compact_support(j);
    CHECK(c.cardinalities() == std::vector<std::size_t>{2, 2});
    CHECK(c.mass().at({0, 1}) == 0.5);
    CHECK(c.mass().at({1, 0}) == 0.5);
    CHECK(c.total_count() == 4);
    CHECK(entropy(c) == entropy(j));
}
