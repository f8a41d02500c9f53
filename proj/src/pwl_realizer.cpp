#include "memnet/pwl_realizer.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace memnet {

Int realize_capacity(int W, int L) {
    if (W < 1 || L < 1) throw std::invalid_argument("realize_capacity: need W, L >= 1");
    return Int(2) * L * (6 * W - 1) + 2;
}

namespace {

// Slope of the piece to the right of each breakpoint (index 0..n-1);
// slope index n-1 is the right end piece.
std::vector<Rat> piece_slopes(const PwlFunction& g) {
    const std::size_t n = g.xs.size();
    std::vector<Rat> s(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        s[k] = (g.ys[k + 1] - g.ys[k]) / (g.xs[k + 1] - g.xs[k]);
    if (n > 0) s[n - 1] = g.right_slope;
    return s;
}

ReluNetwork realize_naive(const PwlFunction& g) {
    if (g.xs.empty()) {
        // base + l*sigma(x) - l*sigma(-x)
        AffineLayer h = zero_layer(2, 1);
        h.weight[0][0] = 1;
        h.weight[1][0] = -1;
        AffineLayer out = zero_layer(1, 2);
        out.weight[0][0] = g.left_slope;
        out.weight[0][1] = -g.left_slope;
        out.bias[0] = g.base;
        return ReluNetwork({h, out});
    }
    const std::size_t n = g.xs.size();
    const std::vector<Rat> s = piece_slopes(g);
    // f(x) = y1 - l*sigma(t1-x) + sum_k c_k*sigma(x-t_k)
    AffineLayer h = zero_layer(static_cast<int>(n) + 1, 1);
    h.weight[0][0] = -1;
    h.bias[0] = g.xs[0];
    for (std::size_t k = 0; k < n; ++k) {
        h.weight[k + 1][0] = 1;
        h.bias[k + 1] = -g.xs[k];
    }
    AffineLayer out = zero_layer(1, static_cast<int>(n) + 1);
    out.bias[0] = g.ys[0];
    out.weight[0][0] = -g.left_slope;
    out.weight[0][1] = s[0];
    for (std::size_t k = 1; k < n; ++k) out.weight[0][k + 1] = s[k] - s[k - 1];
    return ReluNetwork({h, out});
}

// Layered scheme, exact on [t1, tn]: carry z = x - t1 and a signed
// accumulator pair (p, m); each hidden layer hosts a chunk of breakpoint
// units sigma(x - t_k), folded into the accumulator one layer later (the
// last chunk folds into the output affine).
ReluNetwork realize_layered(const PwlFunction& g, int G) {
    const int n = static_cast<int>(g.xs.size());
    const std::vector<Rat> s = piece_slopes(g);
    std::vector<Rat> coef(n);  // coef[k] for unit sigma(x - t_k), k >= 1
    for (int k = 1; k < n; ++k) coef[k] = s[k] - s[k - 1];
    const Rat alpha = g.xs[0];

    const int units = n - 1;
    const int layers_used = std::max(1, (units + G - 1) / G);
    auto chunk_begin = [&](int ell) { return 1 + (ell - 1) * G; };  // breakpoint index
    auto chunk_size = [&](int ell) {
        return std::max(0, std::min(units - (ell - 1) * G, G));
    };

    std::vector<AffineLayer> layers;
    for (int ell = 1; ell <= layers_used; ++ell) {
        const int cs = chunk_size(ell);
        const int prev_cs = ell > 1 ? chunk_size(ell - 1) : 0;
        const int in = ell == 1 ? 1 : 3 + prev_cs;
        AffineLayer l = zero_layer(3 + cs, in);
        if (ell == 1) {
            l.weight[0][0] = 1;
            l.bias[0] = -alpha;  // z = x - t1
            for (int i = 0; i < cs; ++i) {
                l.weight[3 + i][0] = 1;
                l.bias[3 + i] = -g.xs[chunk_begin(ell) + i];
            }
        } else {
            l.weight[0][0] = 1;  // z carries
            // accumulator p' = sigma(p - m + sum c_k h_k), m' = sigma(-...)
            l.weight[1][1] = 1;
            l.weight[1][2] = -1;
            l.weight[2][1] = -1;
            l.weight[2][2] = 1;
            for (int i = 0; i < prev_cs; ++i) {
                const Rat& ck = coef[chunk_begin(ell - 1) + i];
                l.weight[1][3 + i] = ck;
                l.weight[2][3 + i] = -ck;
            }
            for (int i = 0; i < cs; ++i) {
                l.weight[3 + i][0] = 1;
                l.bias[3 + i] = alpha - g.xs[chunk_begin(ell) + i];
            }
        }
        layers.push_back(std::move(l));
    }
    const int last_cs = chunk_size(layers_used);
    AffineLayer out = zero_layer(1, 3 + last_cs);
    out.bias[0] = g.ys[0];
    out.weight[0][0] = s[0];
    out.weight[0][1] = 1;
    out.weight[0][2] = -1;
    for (int i = 0; i < last_cs; ++i)
        out.weight[0][3 + i] = coef[chunk_begin(layers_used) + i];
    layers.push_back(std::move(out));
    return ReluNetwork(std::move(layers));
}

}  // namespace

ReluNetwork realize_pwl(const PwlFunction& g, int W, int L, RealizeMode mode) {
    validate_pwl(g);
    if (mode == RealizeMode::naive) return realize_naive(g);
    if (W < 1 || L < 1) throw std::invalid_argument("realize_pwl: need W, L >= 1");
    const int pieces = g.piece_count();
    if (Int(pieces) > realize_capacity(W, L)) {
        int min_W = W;
        while (Int(pieces) > realize_capacity(min_W, L)) ++min_W;
        int min_L = L;
        while (Int(pieces) > realize_capacity(W, min_L)) ++min_L;
        throw BudgetError("realize_pwl: " + std::to_string(pieces) +
                              " pieces exceed the (W=" + std::to_string(W) +
                              ", L=" + std::to_string(L) + ") capacity " +
                              realize_capacity(W, L).get_str() + "; minimal feasible W=" +
                              std::to_string(min_W) + " (at this L) or L=" +
                              std::to_string(min_L) + " (at this W)",
                          min_W, min_L);
    }
    // Small functions fit the naive single-layer form inside the width cap.
    if (static_cast<int>(g.xs.size()) + 1 <= 6 * W + 2) return realize_naive(g);
    return realize_layered(g, 6 * W - 1);
}

ReluNetwork build_f2(const std::vector<Rat>& xs, const BlockEncoding& enc, int W1, int L1) {
    const int N = static_cast<int>(xs.size());
    const int B = static_cast<int>(enc.u.size());
    const int S = enc.S;
    if (W1 < 1 || L1 < 1) throw std::invalid_argument("build_f2: need W1, L1 >= 1");
    if (B != (N + S - 1) / S) throw std::invalid_argument("build_f2: block count mismatch");
    if (Int(3) * W1 * W1 * L1 < B)
        throw std::invalid_argument("build_f2: width budget precondition 3*W1^2*L1 >= B fails");
    for (int i = 0; i < N; ++i) {
        if (xs[i] < 0) throw std::invalid_argument("build_f2: data must be nonnegative");
        if (i > 0 && !(xs[i - 1] < xs[i]))
            throw std::invalid_argument("build_f2: data must be strictly increasing");
    }

    // Step functions constant on each block's span; breakpoints only between
    // blocks. Extra points at the data hull ends keep the budget realization
    // (exact on its breakpoint hull only) valid at every data point.
    auto step_pwl = [&](const std::vector<Int>& vals) {
        std::vector<std::pair<Rat, Rat>> pts;
        pts.emplace_back(xs[0], Rat(vals[0]));
        for (int t = 1; t < B; ++t) {
            pts.emplace_back(xs[t * S - 1], Rat(vals[t - 1]));
            pts.emplace_back(xs[t * S], Rat(vals[t]));
        }
        pts.emplace_back(xs[N - 1], Rat(vals[B - 1]));
        return pwl_through_points(std::move(pts));
    };
    ReluNetwork f_u = realize_pwl(step_pwl(enc.u), W1, L1, RealizeMode::budget);
    ReluNetwork f_w = realize_pwl(step_pwl(enc.w), W1, L1, RealizeMode::budget);

    AffineLayer sig = zero_layer(1, 1);
    sig.weight[0][0] = 1;
    ReluNetwork sigma_net({sig, identity_layer(1)});

    ReluNetwork combined =
        parallel_block(1, {{sigma_net, {0}, false}, {f_u, {0}, false}, {f_w, {0}, false}});
    return pad_to(combined, 12 * W1 + 5, 2 * L1);
}

}  // namespace memnet
