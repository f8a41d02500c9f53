#ifndef MEMNET_BOUNDS_HPP
#define MEMNET_BOUNDS_HPP

#include <string>
#include <vector>

#include "memnet/rat.hpp"

namespace memnet {

// Upper bound 2*(2*e*M*D/P)^P on the number of distinct sign vectors of M
// degree-D polynomials in P variables (e rounded up). Requires 1 <= P <= M,
// D >= 1.
Rat warren_bound(int P, int M, int D);

// Necessary condition on (W, L) for memorizing every N-point C-class
// delta-separated dataset: W^2 (L+1)(L+2) log2(4e*T_pack*C) >= N log2(C),
// with T_pack = floor(2/delta) + 1 points packed into [-1, 1]. Rounding is
// directed so a reported "fails" is certain; never sufficient.
struct Thm32Report {
    Int T_pack{0};
    bool necessary_condition_holds = false;
    Rat lhs{0};  // upper bracket of the left side
    Rat rhs{0};  // lower bracket of the right side
    Rat lower_bound_value{0};  // N log2(C) / (log2(1/delta) + log2(C)), reference only
};

Thm32Report thm32_feasibility(int W, int L, long long N, int C, const Rat& delta);

enum class Regime { exp_small_delta, mid_delta, none };

struct Prop33Report {
    Regime regime = Regime::none;
    bool ambiguous = false;  // 1/delta landed inside the e^(5WL) bracket
    std::string inequality;  // the regime's implied inequality, human form
    Int implied_N_ceiling{0};  // 0 when regime is none
    bool holds = false;        // whether the given N satisfies it
};

// Requires N even, 1/delta >= 2N, W >= 2, L >= 1. Regime 1: 1/delta >
// e^(5WL) implies W^2 L >= N/32. Regime 2: 17(W+1)^(2L) < 1/delta <=
// e^(5WL) implies W^3 L / log2(W) >= N/72 (log base 2 is our documented
// choice).
Prop33Report prop33_check(int W, int L, long long N, const Rat& delta);

// Exact (W+1)^L, the 1-D piece-count ceiling.
Int serra_bound(int W, int L);

// Draws `samples` random bounded-rational parameter vectors for a dense
// 1 -> W -> ... -> W -> 1 net with L hidden layers and counts distinct sign
// vectors of (f(x_i) - y) over inputs x labels 1..labels_C, sgn(0) = +1.
// A lower estimate of the true sign-pattern count.
long sample_sign_patterns(int W, int L, const std::vector<Rat>& inputs, int labels_C,
                          int samples, unsigned long seed);

}  // namespace memnet

#endif
