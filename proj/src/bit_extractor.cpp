#include "memnet/bit_extractor.hpp"

#include <stdexcept>
#include <utility>

namespace memnet {

int extractor_width_cap(int m, int L) {
    const int kappa = (m + L - 1) / L;
    return (1 << (kappa + 2)) + 2;
}

namespace {

// Affine expression over the current activation vector.
struct Expr {
    std::vector<Rat> coef;
    Rat cst{0};
};

}  // namespace

ReluNetwork build_extractor(int n, int m, int L) {
    if (m < 1 || m > n) throw std::invalid_argument("build_extractor: need 1 <= m <= n");
    if (L < 1) throw std::invalid_argument("build_extractor: need L >= 1");
    const int kappa = (m + L - 1) / L;
    const Rat K = pow2(n + 2);  // steep enough to separate the dyadic grid

    std::vector<AffineLayer> layers;
    Expr rem{{Rat(1)}, Rat(0)};  // over the 1-dim input b
    Expr acc{{Rat(0)}, Rat(0)};
    int remaining = m;
    int stages = 0;
    while (remaining > 0) {
        const int k = remaining < kappa ? remaining : kappa;
        remaining -= k;
        ++stages;
        const int nthr = (1 << k) - 1;
        const int dim_prev = static_cast<int>(rem.coef.size());
        AffineLayer l = zero_layer(2 + 2 * nthr, dim_prev);
        l.weight[0] = rem.coef;
        l.bias[0] = rem.cst;
        l.weight[1] = acc.coef;
        l.bias[1] = acc.cst;
        const Rat scale = K * pow2(k);
        for (int j = 1; j <= nthr; ++j) {
            // sigma(K*(2^k*rem - j) + 1) and sigma(K*(2^k*rem - j)):
            // their difference is the comparison [2^k*rem >= j] on dyadics.
            for (int t = 0; t < dim_prev; ++t) {
                l.weight[2 * j][t] = scale * rem.coef[t];
                l.weight[2 * j + 1][t] = scale * rem.coef[t];
            }
            const Rat off = scale * rem.cst - K * j;
            l.bias[2 * j] = off + 1;
            l.bias[2 * j + 1] = off;
        }
        layers.push_back(std::move(l));

        const int dim = 2 + 2 * nthr;
        Expr nrem{std::vector<Rat>(dim, Rat(0)), Rat(0)};
        Expr nacc{std::vector<Rat>(dim, Rat(0)), Rat(0)};
        nrem.coef[0] = pow2(k);
        nacc.coef[1] = pow2(k);
        for (int j = 1; j <= nthr; ++j) {
            nrem.coef[2 * j] = -1;
            nrem.coef[2 * j + 1] = 1;
            nacc.coef[2 * j] = 1;
            nacc.coef[2 * j + 1] = -1;
        }
        rem = std::move(nrem);
        acc = std::move(nacc);
    }
    for (int ell = stages; ell < L; ++ell)
        layers.push_back(identity_layer(static_cast<int>(rem.coef.size())));

    AffineLayer out = zero_layer(2, static_cast<int>(rem.coef.size()));
    out.weight[0] = acc.coef;
    out.bias[0] = acc.cst;
    out.weight[1] = rem.coef;
    out.bias[1] = rem.cst;
    layers.push_back(std::move(out));
    return ReluNetwork(std::move(layers));
}

ReluNetwork build_indicator() {
    // p = sigma(2x - 2y + 1), q = sigma(2x - 2y - 2)
    AffineLayer l1 = zero_layer(2, 2);
    l1.weight[0] = {Rat(2), Rat(-2)};
    l1.bias[0] = 1;
    l1.weight[1] = {Rat(2), Rat(-2)};
    l1.bias[1] = -2;
    // s1 = sigma(1 - p + 4q), s2 = sigma(-p + 4q)
    AffineLayer l2 = zero_layer(2, 2);
    l2.weight[0] = {Rat(-1), Rat(4)};
    l2.bias[0] = 1;
    l2.weight[1] = {Rat(-1), Rat(4)};
    // H = 1 - s1 + s2
    AffineLayer out = zero_layer(1, 2);
    out.weight[0] = {Rat(-1), Rat(1)};
    out.bias[0] = 1;
    return ReluNetwork({l1, l2, out});
}

ReluNetwork build_gate(int c) {
    const Rat g = pow2(c + 1);
    AffineLayer l = zero_layer(1, 2);
    l.weight[0] = {g, Rat(1)};
    l.bias[0] = -g;
    return ReluNetwork({l, identity_layer(1)});
}

ReluNetwork build_f3(int rho, int c, int S, int T) {
    if (rho < 1 || c < 1 || S < 1 || T < 1)
        throw std::invalid_argument("build_f3: all parameters must be >= 1");

    // (x, u, w) -> (x, u / 2^(rho*S), w / 2^(c*S), acc = 0, phi = 0)
    AffineLayer rescale = zero_layer(5, 3);
    rescale.weight[0][0] = 1;
    rescale.weight[1][1] = pow2(-(static_cast<long>(rho) * S));
    rescale.weight[2][2] = pow2(-(static_cast<long>(c) * S));
    ReluNetwork net = affine_net(rescale);

    AffineLayer acc_plus_phi = zero_layer(1, 2);
    acc_plus_phi.weight[0] = {Rat(1), Rat(1)};

    for (int k = 1; k <= S; ++k) {
        const int left = S - k + 1;  // segments still packed in the remainders
        // Extract this stage's segment from each stream; fold the previous
        // stage's gate value into the accumulator.
        ReluNetwork rowA = parallel_block(
            5, {{identity_affine(1), {0}, true},
                {build_extractor(rho * left, rho, T), {1}, false},
                {build_extractor(c * left, c, T), {2}, false},
                {affine_net(acc_plus_phi), {3, 4}, true}});
        // outputs: x, s_k, rem_u, t_k, rem_w, acc
        ReluNetwork rowB = parallel_block(
            6, {{identity_affine(1), {0}, true},
                {build_indicator(), {0, 1}, false},
                {identity_affine(1), {2}, true},
                {identity_affine(1), {3}, true},
                {identity_affine(1), {4}, true},
                {identity_affine(1), {5}, true}});
        // outputs: x, ytilde, rem_u, t_k, rem_w, acc
        ReluNetwork rowC = parallel_block(
            6, {{identity_affine(1), {0}, true},
                {identity_affine(1), {2}, true},
                {identity_affine(1), {4}, true},
                {identity_affine(1), {5}, true},
                {build_gate(c), {1, 3}, false}});
        // outputs: x, rem_u, rem_w, acc, phi
        net = compose(net, compose(compose(rowA, rowB), rowC));
    }

    AffineLayer final_sum = zero_layer(1, 5);
    final_sum.weight[0][3] = 1;
    final_sum.weight[0][4] = 1;
    return compose(net, affine_net(final_sum));
}

}  // namespace memnet
