#include "memnet/bounds.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

#include "memnet/network.hpp"

namespace memnet {

namespace {

Rat rat_pow(const Rat& x, unsigned long p) {
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), p);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), p);
    return make_rat(num, den);
}

constexpr int kLogBits = 30;

}  // namespace

Rat warren_bound(int P, int M, int D) {
    if (P < 1 || P > M) throw std::invalid_argument("warren_bound: need 1 <= P <= M");
    if (D < 1) throw std::invalid_argument("warren_bound: need D >= 1");
    const Rat base = Rat(2) * e_upper() * M * D / P;
    return 2 * rat_pow(base, static_cast<unsigned long>(P));
}

Thm32Report thm32_feasibility(int W, int L, long long N, int C, const Rat& delta) {
    if (W < 2 || L < 1 || C < 2 || N < 1 || delta <= 0)
        throw std::invalid_argument("thm32_feasibility: bad arguments");
    Thm32Report rep;
    rep.T_pack = rat_floor(Rat(2) / delta) + 1;
    // Favor "holds": upper bracket on the left, lower on the right, so a
    // reported failure is certain.
    rep.lhs = Rat(W) * W * (L + 1) * (L + 2) *
              log2_upper(Rat(4) * e_upper() * rep.T_pack * C, kLogBits);
    rep.rhs = Rat(Int(static_cast<long>(N))) * log2_lower(Rat(C), kLogBits);
    rep.necessary_condition_holds = rep.lhs >= rep.rhs;
    const Rat denom = log2_lower(1 / delta, kLogBits) + log2_lower(Rat(C), kLogBits);
    rep.lower_bound_value =
        denom > 0 ? Rat(Int(static_cast<long>(N))) * log2_upper(Rat(C), kLogBits) / denom : Rat(0);
    return rep;
}

Prop33Report prop33_check(int W, int L, long long N, const Rat& delta) {
    if (W < 2 || L < 1) throw std::invalid_argument("prop33_check: need W >= 2, L >= 1");
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("prop33_check: N must be even");
    if (delta <= 0) throw std::invalid_argument("prop33_check: need delta > 0");
    const Rat inv = 1 / delta;
    if (inv < Rat(Int(2) * static_cast<long>(N)))
        throw std::invalid_argument("prop33_check: hypothesis 1/delta >= 2N violated");

    const unsigned long e_exp = 5UL * W * L;
    const Rat e_hi = rat_pow(e_upper(), e_exp);
    const Rat e_lo = rat_pow(e_lower(), e_exp);

    Prop33Report rep;
    if (inv > e_hi) {
        rep.regime = Regime::exp_small_delta;
        rep.inequality = "W^2*L >= N/32";
        rep.implied_N_ceiling = Int(32) * W * W * L;
        rep.holds = Int(static_cast<long>(N)) <= rep.implied_N_ceiling;
        return rep;
    }
    if (inv > e_lo) {
        rep.ambiguous = true;  // inside the e^(5WL) bracket: cannot classify
        return rep;
    }
    Int serra2;
    mpz_pow_ui(serra2.get_mpz_t(), Int(W + 1).get_mpz_t(), 2UL * L);
    if (Rat(Int(17) * serra2) < inv) {
        rep.regime = Regime::mid_delta;
        rep.inequality = "W^3*L/log2(W) >= N/72";
        rep.implied_N_ceiling =
            rat_floor(Rat(Int(72) * W * W * W * L) / log2_lower(Rat(W), kLogBits));
        rep.holds = Int(static_cast<long>(N)) <= rep.implied_N_ceiling;
    }
    return rep;
}

Int serra_bound(int W, int L) {
    if (W < 1 || L < 1) throw std::invalid_argument("serra_bound: need W, L >= 1");
    Int out;
    mpz_pow_ui(out.get_mpz_t(), Int(W + 1).get_mpz_t(), static_cast<unsigned long>(L));
    return out;
}

long sample_sign_patterns(int W, int L, const std::vector<Rat>& inputs, int labels_C,
                          int samples, unsigned long seed) {
    if (W < 2 || L < 1 || samples < 1 || labels_C < 1 || inputs.empty())
        throw std::invalid_argument("sample_sign_patterns: bad arguments");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-(1L << 12), 1L << 12);
    const Int den = int_pow2(8);
    auto draw = [&]() { return make_rat(Int(dist(rng)), den); };

    std::unordered_set<std::string> patterns;
    for (int s = 0; s < samples; ++s) {
        std::vector<AffineLayer> layers;
        for (int ell = 0; ell <= L; ++ell) {
            const int out_dim = ell == L ? 1 : W;
            const int in_dim = ell == 0 ? 1 : W;
            AffineLayer l = zero_layer(out_dim, in_dim);
            for (int r = 0; r < out_dim; ++r) {
                for (int c = 0; c < in_dim; ++c) l.weight[r][c] = draw();
                l.bias[r] = draw();
            }
            layers.push_back(std::move(l));
        }
        const ReluNetwork net(std::move(layers));
        std::string pattern;
        pattern.reserve(inputs.size() * labels_C);
        for (const Rat& x : inputs) {
            const Rat fx = net.eval({x})[0];
            for (int y = 1; y <= labels_C; ++y)
                pattern.push_back(fx - y >= 0 ? '1' : '0');  // sgn(0) = +1
        }
        patterns.insert(std::move(pattern));
    }
    return static_cast<long>(patterns.size());
}

}  // namespace memnet
