#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "entri/balance.hpp"
#include "oracle.hpp"

using namespace entri;

namespace {

JointDistribution xor_triple() {
    std::map<CodeTuple, std::uint64_t> counts{
        {{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}, {{1, 1, 0}, 1}};
    return JointDistribution({"x1", "x2", "y"}, {2, 2, 2}, std::move(counts), 4);
}

std::vector<std::vector<std::uint64_t>> diag3(std::uint64_t n) {
    return {{n, 0, 0}, {0, n, 0}, {0, 0, n}};
}

}  // namespace

TEST_CASE("xor channel balance and aggregate coordinate") {
    const JointDistribution j = xor_triple();
    const Partition part{{0, 1}, {2}};
    const ChannelDecomposition d = channel_balance(j, part);
    CHECK(d.h_u_total == 3.0);
    CHECK_THAT(d.delta_h, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(d.binding, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(d.vi, Catch::Matchers::WithinAbs(1.0, 1e-12));
    const TriangleCoord c = normalize_aggregate(d);
    CHECK(c.kind == CoordKind::Aggregate);
    CHECK_THAT(c.delta_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(c.info_prime, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(c.vi_prime, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
}

TEST_CASE("xor split balance, both sides") {
    const JointDistribution j = xor_triple();
    const auto [x, y] = split_balance(j, {{0, 1}, {2}});
    CHECK(x.side == Side::X);
    CHECK(x.h_u == 2.0);
    CHECK_THAT(x.delta_h, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(x.binding, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(x.h_cond, Catch::Matchers::WithinAbs(1.0, 1e-12));
    const TriangleCoord cx = normalize_split(x);
    CHECK(cx.kind == CoordKind::SplitX);
    CHECK_THAT(cx.info_prime, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(cx.vi_prime, Catch::Matchers::WithinAbs(0.5, 1e-12));

    CHECK(y.side == Side::Y);
    CHECK(y.h_u == 1.0);
    const TriangleCoord cy = normalize_split(y);
    CHECK(cy.kind == CoordKind::SplitY);
    CHECK_THAT(cy.delta_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(cy.info_prime, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(cy.vi_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("balance identities hold on random sparse joints") {
    std::mt19937_64 rng(1234);
    for (int c = 0; c < 80; ++c) {
        std::vector<std::size_t> cards;
        const JointDistribution j = oracle::random_sparse_joint(rng, 6, 5, &cards);
        const auto [xs, ys] = oracle::random_partition(rng, cards.size());
        const Partition part{xs, ys};

        const ChannelDecomposition d = channel_balance(j, part);
        CHECK(close_scaled(d.delta_h + 2.0 * d.binding + d.vi, d.h_u_total));
        const auto [sx, sy] = split_balance(j, part);
        CHECK(close_scaled(sx.delta_h + sx.binding + sx.h_cond, sx.h_u));
        CHECK(close_scaled(sy.delta_h + sy.binding + sy.h_cond, sy.h_u));

        const TriangleCoord a = normalize_aggregate(d);
        CHECK(close_scaled(a.delta_prime + a.info_prime + a.vi_prime, 1.0));
        for (double part_value : {a.delta_prime, a.info_prime, a.vi_prime}) {
            CHECK(part_value >= 0.0);
            CHECK(part_value <= 1.0);
        }
    }
}

TEST_CASE("confusion matrix vertices land on the triangle corners") {
    const CbetResult perfect = cbet_from_confusion(diag3(10));
    CHECK_THAT(perfect.aggregate.delta_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(perfect.aggregate.info_prime, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(perfect.aggregate.vi_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));

    const CbetResult noise =
        cbet_from_confusion({{10, 10, 10}, {10, 10, 10}, {10, 10, 10}});
    CHECK_THAT(noise.aggregate.delta_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(noise.aggregate.info_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(noise.aggregate.vi_prime, Catch::Matchers::WithinAbs(1.0, 1e-12));

    const CbetResult stuck =
        cbet_from_confusion({{5, 0, 0}, {5, 0, 0}, {5, 0, 0}});
    CHECK_THAT(stuck.aggregate.delta_prime, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(stuck.aggregate.info_prime, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(stuck.aggregate.vi_prime, Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("cbet result carries consistent split coordinates") {
    const CbetResult r = cbet_from_confusion({{8, 2, 0}, {1, 7, 2}, {0, 3, 7}});
    CHECK(r.coord_x.kind == CoordKind::SplitX);
    CHECK(r.coord_y.kind == CoordKind::SplitY);
    CHECK(close_scaled(r.channel.delta_h + 2.0 * r.channel.binding + r.channel.vi,
                       r.channel.h_u_total));
    CHECK(close_scaled(r.split_x.h_u + r.split_y.h_u, r.channel.h_u_total));
    CHECK(r.split_x.binding == r.split_y.binding);
}

TEST_CASE("confusion matrix argument errors") {
    CHECK_THROWS_AS(cbet_from_confusion({}), ArgumentError);
    CHECK_THROWS_WITH(cbet_from_confusion({{1, 2}, {3}}),
                      Catch::Matchers::ContainsSubstring("row 1"));
    CHECK_THROWS_AS(cbet_from_confusion({{0, 0}, {0, 0}}), DataError);
}

TEST_CASE("degenerate domains are data errors") {
    std::map<CodeTuple, double> mass{{{0, 0}, 1.0}};
    const JointDistribution j({"a", "b"}, {1, 1}, std::move(mass));
    CHECK_THROWS_AS(channel_balance(j, {{0}, {1}}), DataError);
    CHECK_THROWS_AS(split_balance(j, {{0}, {1}}), DataError);
}

TEST_CASE("dust clamping tolerates rounding but rejects corruption") {
    CHECK(detail::clamp_dust(-5e-13, "t") == 0.0);
    CHECK(detail::clamp_dust(0.25, "t") == 0.25);
    CHECK_THROWS_AS(detail::clamp_dust(-1e-9, "t"), InternalError);
    CHECK(detail::clamp_fraction(1.0 + 5e-13, "t") == 1.0);
    CHECK_THROWS_AS(detail::clamp_fraction(1.1, "t"), InternalError);
}

TEST_CASE("region classification") {
    const TriangleCoord faithful{0.05, 0.9, 0.05, CoordKind::Aggregate};
    const TriangleCoord randomizing{0.1, 0.05, 0.85, CoordKind::Aggregate};
    const TriangleCoord rigid{0.85, 0.05, 0.1, CoordKind::Aggregate};
    const TriangleCoord center{1.0 / 3, 1.0 / 3, 1.0 / 3, CoordKind::Aggregate};
    CHECK(classify_region(faithful) == Region::Faithful);
    CHECK(classify_region(randomizing) == Region::Randomizing);
    CHECK(classify_region(rigid) == Region::Rigid);
    CHECK(classify_region(center) == Region::Intermediate);
    CHECK(classify_region(center, 1.0 / 3 + 0.001) == Region::Intermediate);
    CHECK(classify_region(faithful, 0.9) == Region::Faithful);
    CHECK_THROWS_AS(classify_region(center, 0.2), ArgumentError);
    CHECK_THROWS_AS(classify_region(center, 1.2), ArgumentError);
}

TEST_CASE("coordinate kind labels") {
    CHECK(to_string(CoordKind::Aggregate) == "XY");
    CHECK(to_string(CoordKind::SplitX) == "X");
    CHECK(to_string(CoordKind::SplitY) == "Y");
    CHECK(to_string(Side::X) == "X");
    CHECK(to_string(Region::Faithful) == "faithful");
}
