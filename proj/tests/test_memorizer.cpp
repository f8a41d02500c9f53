#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "memnet/io.hpp"
#include "memnet/memorizer.hpp"
#include "memnet/projector.hpp"

using namespace memnet;

namespace {

LabeledDataset two_point_line() {
    LabeledDataset ds;
    ds.d = 1;
    ds.C = 2;
    ds.delta = Rat(1);
    ds.points = {{make_rat(-1, 2)}, {make_rat(1, 2)}};
    ds.labels = {2, 1};
    return ds;
}

Int param_count_formula(const Int& W, int L) {
    return Int(L - 1) * W * W + Int(L + 2) * W + 1;
}

}  // namespace

TEST_CASE("derive_params worked example") {
    const ConstructionParams p = derive_params(100, 2, 4, make_rat(1, 10), 5, 4);
    CHECK(p.W1 == 1);
    CHECK(p.L1 == 35);
    CHECK(p.target_L == 106);
    CHECK(p.rho == 22);
    CHECK(p.c == 2);
    CHECK(p.target_W == 268);
    CHECK(p.bounded_width_choice);
    CHECK(p.R == compute_R(100, make_rat(1, 10), 2));
}

TEST_CASE("derive_params width terms") {
    // Large T shrinks the extractor term until the block-lookup term wins.
    const ConstructionParams p = derive_params(100, 2, 4, make_rat(1, 10), 2, 22);
    CHECK(p.rho == 22);
    // term2 = 4*(2^1 + 2^1 + 1) = 20 < 12*W1+5 with W1 >= 2? W1 here:
    // least W with W^2 * 4 * 25 >= 100 -> W1 = 1, term1 = 17 < 20.
    CHECK(p.W1 == 1);
    CHECK(p.target_W == 20);
    CHECK(p.bounded_width_choice);
    CHECK_THROWS_AS(derive_params(0, 1, 2, Rat(1), 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(10, 1, 2, Rat(1), 0, 1), std::invalid_argument);
}

TEST_CASE("validate_dataset") {
    LabeledDataset ds = two_point_line();
    CHECK_NOTHROW(validate_dataset(ds));
    ds.points[0][0] = Rat(-2);
    CHECK_THROWS_AS(validate_dataset(ds), std::invalid_argument);
    ds = two_point_line();
    ds.delta = Rat(3);  // actual separation is 1
    CHECK_THROWS_AS(validate_dataset(ds), std::invalid_argument);
    ds = two_point_line();
    ds.labels[1] = 3;  // out of [1, C]
    CHECK_THROWS_AS(validate_dataset(ds), std::invalid_argument);
    ds = two_point_line();
    ds.labels.pop_back();
    CHECK_THROWS_AS(validate_dataset(ds), std::invalid_argument);
}

TEST_CASE("construct memorizes two points") {
    const LabeledDataset ds = two_point_line();
    const auto [net, rep] = construct(ds, 1, 1);
    CHECK(rep.verified);
    CHECK(rep.mismatches.empty());
    CHECK(net.eval(ds.points[0])[0] == 2);
    CHECK(net.eval(ds.points[1])[0] == 1);
    CHECK(rep.achieved_L == rep.params.target_L);
    CHECK(rep.param_count == param_count_formula(Int(rep.achieved_W), rep.achieved_L));
}

TEST_CASE("construct memorizes a sampled planar dataset") {
    const LabeledDataset ds = gen_dataset(12, 2, 3, make_rat(1, 2), 7);
    const auto [net, rep] = construct(ds, 2, 4);
    CHECK(rep.verified);
    CHECK(rep.achieved_L == rep.params.target_L);
    CHECK(Int(rep.achieved_W) <= rep.params.target_W);
    CHECK(rep.strict_constants_ok);
    for (int i = 0; i < ds.N(); ++i) CHECK(net.eval(ds.points[i])[0] == ds.labels[i]);
}

TEST_CASE("construct is invariant to dataset permutation") {
    LabeledDataset ds = gen_dataset(8, 2, 2, make_rat(1, 4), 9);
    std::reverse(ds.points.begin(), ds.points.end());
    std::reverse(ds.labels.begin(), ds.labels.end());
    const auto [net, rep] = construct(ds, 2, 3);
    CHECK(rep.verified);
}

TEST_CASE("construct is deterministic per seed") {
    const LabeledDataset ds = gen_dataset(6, 2, 2, make_rat(1, 4), 13);
    ConstructOptions opt;
    opt.seed = 5;
    const auto [n1, r1] = construct(ds, 2, 2, opt);
    const auto [n2, r2] = construct(ds, 2, 2, opt);
    std::ostringstream s1, s2;
    write_network(s1, n1);
    write_network(s2, n2);
    CHECK(s1.str() == s2.str());
    CHECK(r1.projection_trials == r2.projection_trials);
}

TEST_CASE("verify reports every mismatch of a constant net") {
    const LabeledDataset ds = two_point_line();
    const ReluNetwork zero = affine_net(zero_layer(1, 1));
    const MemorizationReport rep = verify(zero, ds);
    CHECK_FALSE(rep.verified);
    REQUIRE(rep.mismatches.size() == 2);
    CHECK(rep.mismatches[0].index == 0);
    CHECK(rep.mismatches[0].expected == 2);
    CHECK(rep.mismatches[0].got == 0);
    CHECK(rep.mismatches[1].expected == 1);
}

TEST_CASE("verify rejects wrong input arity") {
    const LabeledDataset ds = two_point_line();
    const ReluNetwork wrong = affine_net(zero_layer(1, 2));
    CHECK_THROWS_AS(verify(wrong, ds), std::invalid_argument);
}

TEST_CASE("sweep") {
    const LabeledDataset ds = gen_dataset(6, 2, 2, make_rat(1, 4), 21);
    SweepOptions opt;
    opt.max_build_width = 100;
    const auto rows = sweep(ds, {1, 2}, {2, 4}, opt);
    REQUIRE(rows.size() == 4);
    for (const SweepRow& row : rows) {
        const ConstructionParams p = derive_params(ds.N(), ds.d, ds.C, ds.delta, row.S, row.T);
        CHECK(row.target_W == p.target_W);
        CHECK(row.target_L == p.target_L);
        CHECK(row.WL_sq == p.target_W * p.target_L * p.target_W * p.target_L);
        CHECK(row.param_count == param_count_formula(p.target_W, p.target_L));
        if (p.target_W > opt.max_build_width) {
            CHECK_FALSE(row.verified);
            CHECK_FALSE(row.error.empty());
        } else {
            CHECK(row.verified);
            CHECK(row.error.empty());
        }
    }
    // At least one row must actually have been built and verified.
    CHECK(std::any_of(rows.begin(), rows.end(),
                      [](const SweepRow& r) { return r.verified; }));
}
