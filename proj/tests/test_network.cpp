#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "memnet/network.hpp"

using namespace memnet;

namespace {

Rat rnd(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-64, 64);
    std::uniform_int_distribution<long> den(1, 16);
    return make_rat(num(rng), den(rng));
}

ReluNetwork random_net(std::mt19937_64& rng, int in, const std::vector<int>& hidden, int out,
                       bool zero_bias = false) {
    std::vector<int> dims;
    dims.push_back(in);
    for (int h : hidden) dims.push_back(h);
    dims.push_back(out);
    std::vector<AffineLayer> layers;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        AffineLayer l = zero_layer(dims[i + 1], dims[i]);
        for (int r = 0; r < dims[i + 1]; ++r) {
            for (int c = 0; c < dims[i]; ++c) l.weight[r][c] = rnd(rng);
            if (!zero_bias) l.bias[r] = rnd(rng);
        }
        layers.push_back(l);
    }
    return ReluNetwork(layers);
}

// sigma(x) with identity output
ReluNetwork sigma_net() {
    AffineLayer h = zero_layer(1, 1);
    h.weight[0][0] = 1;
    return ReluNetwork({h, identity_layer(1)});
}

// Hat function peaking at (peak, 1), zero outside [peak-1, peak+1]:
// sigma(x-peak+1) - 2 sigma(x-peak) + sigma(x-peak-1).
ReluNetwork hat_net(const Rat& peak) {
    AffineLayer h = zero_layer(3, 1);
    for (int r = 0; r < 3; ++r) h.weight[r][0] = 1;
    h.bias[0] = 1 - peak;
    h.bias[1] = -peak;
    h.bias[2] = -1 - peak;
    AffineLayer out = zero_layer(1, 3);
    out.weight[0] = {Rat(1), Rat(-2), Rat(1)};
    return ReluNetwork({h, out});
}

}  // namespace

TEST_CASE("eval basics") {
    const ReluNetwork s = sigma_net();
    CHECK(s.eval({Rat(-3)})[0] == 0);
    CHECK(s.eval({make_rat(5, 2)})[0] == make_rat(5, 2));

    // sigma(1 - sigma(1 - x)) at x = 1/4
    AffineLayer l1 = zero_layer(1, 1);
    l1.weight[0][0] = -1;
    l1.bias[0] = 1;
    AffineLayer l2 = zero_layer(1, 1);
    l2.weight[0][0] = -1;
    l2.bias[0] = 1;
    ReluNetwork two({l1, l2, identity_layer(1)});
    CHECK(two.eval({make_rat(1, 4)})[0] == make_rat(1, 4));
    CHECK(two.depth() == 2);

    CHECK_THROWS_AS(s.eval({Rat(1), Rat(2)}), std::invalid_argument);
}

TEST_CASE("structure validation") {
    AffineLayer a = zero_layer(2, 1);
    AffineLayer bad = zero_layer(1, 3);  // does not chain after out_dim 2
    CHECK_THROWS_AS(ReluNetwork({a, bad}), std::invalid_argument);
    CHECK_THROWS_AS(ReluNetwork(std::vector<AffineLayer>{}), std::invalid_argument);
}

TEST_CASE("compose") {
    std::mt19937_64 rng(21);
    const ReluNetwork g = random_net(rng, 2, {3, 2}, 2);
    const ReluNetwork composed = compose(identity_affine(2), g);
    for (int i = 0; i < 100; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        CHECK(composed.eval(x) == g.eval(x));
    }
    CHECK(composed.depth() == g.depth());
    CHECK(composed.width() == g.width());

    const ReluNetwork d1 = sigma_net();
    const ReluNetwork c = compose(d1, d1);
    CHECK(c.depth() == 2);
    CHECK(c.width() == 1);

    // width-3 depth-4 net feeding a width-2 depth-2 net -> W=3, L=6
    const ReluNetwork f1 = random_net(rng, 1, {3, 3, 3, 3}, 2);
    const ReluNetwork f2 = random_net(rng, 2, {2, 2}, 1);
    const ReluNetwork cc = compose(f1, f2);
    CHECK(cc.width() == 3);
    CHECK(cc.depth() == 6);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng)};
        CHECK(cc.eval(x) == f2.eval(f1.eval(x)));
    }
    CHECK_THROWS_AS(compose(f2, f2), std::invalid_argument);
}

TEST_CASE("concat") {
    std::mt19937_64 rng(22);
    const ReluNetwork f = random_net(rng, 2, {3}, 1);
    const ReluNetwork dup = concat(f, f);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        const auto y = dup.eval(x);
        const auto fy = f.eval(x);
        CHECK(y.size() == 2);
        CHECK(y[0] == fy[0]);
        CHECK(y[1] == fy[0]);
    }

    const ReluNetwork a = random_net(rng, 1, {5}, 1);
    const ReluNetwork b = random_net(rng, 1, {7}, 2);
    CHECK(concat(a, b).width() == 12);

    const ReluNetwork deep2 = random_net(rng, 2, {2, 3}, 1);
    const ReluNetwork deep5 = random_net(rng, 2, {2, 2, 2, 2, 2}, 1);
    const ReluNetwork both = concat(deep2, deep5);
    CHECK(both.depth() == 5);
    for (int i = 0; i < 100; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        const auto y = both.eval(x);
        CHECK(y[0] == deep2.eval(x)[0]);
        CHECK(y[1] == deep5.eval(x)[0]);
    }
}

TEST_CASE("pad_to") {
    std::mt19937_64 rng(23);
    const ReluNetwork f = random_net(rng, 2, {2}, 1);
    const ReluNetwork wide = pad_to(f, 4, 1);
    CHECK(wide.width() == 4);
    CHECK(wide.depth() == 1);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        CHECK(wide.eval(x) == f.eval(x));
    }

    const ReluNetwork deep = pad_to(f, 2, 3);
    CHECK(deep.depth() == 3);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        CHECK(deep.eval(x) == f.eval(x));
    }

    // Depth-0 signed values need pair channels.
    AffineLayer neg = zero_layer(1, 1);
    neg.weight[0][0] = -3;
    neg.bias[0] = 1;
    const ReluNetwork aff = affine_net(neg);
    const ReluNetwork padded = pad_to(aff, 2, 2, false);
    CHECK(padded.depth() == 2);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng)};
        CHECK(padded.eval(x) == aff.eval(x));
    }

    CHECK_THROWS_AS(pad_to(f, 1, 1), std::invalid_argument);
}

TEST_CASE("parallel_block input routing") {
    std::mt19937_64 rng(24);
    const ReluNetwork f = random_net(rng, 1, {2}, 1);
    const ReluNetwork g = random_net(rng, 2, {3, 2}, 1);
    const ReluNetwork blk = parallel_block(3, {{f, {2}, false}, {g, {0, 1}, false}});
    CHECK(blk.depth() == 2);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng), rnd(rng)};
        const auto y = blk.eval(x);
        CHECK(y[0] == f.eval({x[2]})[0]);
        CHECK(y[1] == g.eval({x[0], x[1]})[0]);
    }
}

TEST_CASE("to_pwl") {
    AffineLayer aff = zero_layer(1, 1);
    aff.weight[0][0] = 3;
    aff.bias[0] = -2;
    CHECK(to_pwl(affine_net(aff)).piece_count() == 1);

    const PwlFunction relu = to_pwl(sigma_net());
    CHECK(relu.piece_count() == 2);
    CHECK(relu.xs.size() == 1);
    CHECK(relu.xs[0] == 0);
    CHECK(relu.ys[0] == 0);
    CHECK(relu.left_slope == 0);
    CHECK(relu.right_slope == 1);

    // Composition of two hat functions; compare piece count with a
    // dense-grid slope-change oracle on a dyadic grid.
    const ReluNetwork hh = compose(hat_net(make_rat(1, 2)), hat_net(make_rat(1, 2)));
    const PwlFunction g = to_pwl(hh);
    const Rat step = make_rat(1, 64);
    std::vector<Rat> grid_vals;
    for (Rat x(-2); x <= 3; x += step) grid_vals.push_back(hh.eval({x})[0]);
    int changes = 0;
    for (std::size_t i = 2; i < grid_vals.size(); ++i) {
        const Rat s1 = grid_vals[i - 1] - grid_vals[i - 2];
        const Rat s2 = grid_vals[i] - grid_vals[i - 1];
        if (s1 != s2) ++changes;
    }
    CHECK(g.piece_count() == changes + 1);

    // Exact agreement with eval everywhere.
    std::mt19937_64 rng(25);
    for (int i = 0; i < 200; ++i) {
        const Rat x = rnd(rng);
        CHECK(pwl_eval(g, x) == hh.eval({x})[0]);
    }
}

TEST_CASE("to_pwl agrees with eval on random nets") {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 30; ++t) {
        const ReluNetwork net = random_net(rng, 1, {3, 2, 3}, 1);
        const PwlFunction g = to_pwl(net);
        for (int i = 0; i < 50; ++i) {
            const Rat x = rnd(rng);
            CHECK(pwl_eval(g, x) == net.eval({x})[0]);
        }
    }
}

TEST_CASE("positive homogeneity with zero biases") {
    std::mt19937_64 rng(27);
    const ReluNetwork net = random_net(rng, 2, {3, 3}, 1, /*zero_bias=*/true);
    for (int i = 0; i < 50; ++i) {
        const std::vector<Rat> x{rnd(rng), rnd(rng)};
        const Rat lambda = make_rat(7, 3);
        const std::vector<Rat> lx{lambda * x[0], lambda * x[1]};
        CHECK(net.eval(lx)[0] == lambda * net.eval(x)[0]);
    }
}
