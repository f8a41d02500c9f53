#ifndef MEMNET_PWL_REALIZER_HPP
#define MEMNET_PWL_REALIZER_HPP

#include <stdexcept>
#include <vector>

#include "memnet/bit_codec.hpp"
#include "memnet/network.hpp"
#include "memnet/pwl.hpp"

namespace memnet {

enum class RealizeMode { budget, naive };

// Thrown when a budget-mode realization cannot fit; carries the minimal
// feasible budgets (each computed with the other parameter held fixed).
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& msg, int min_W_, int min_L_)
        : std::runtime_error(msg), min_W(min_W_), min_L(min_L_) {}
    int min_W;
    int min_L;
};

// Maximum piece count the budget-mode scheme can realize within width 6W+2
// and depth 2L: one breakpoint is absorbed by the input carry, and each of
// the 2L hidden layers hosts up to 6W-1 breakpoint units.
Int realize_capacity(int W, int L);

// Builds a ReLU net computing g. Naive mode: exact on all of R, width
// breakpoints+1 (min 2), depth 1. Budget mode: exact on the breakpoint hull,
// width <= 6W+2, depth <= 2L; throws BudgetError when g has more pieces than
// realize_capacity(W, L).
ReluNetwork realize_pwl(const PwlFunction& g, int W, int L, RealizeMode mode);

// Block-lookup net: maps each data point x_i (xs sorted ascending, >= 0) to
// (sigma(x_i), u_block(i), w_block(i)). Width exactly 12*W1+5, depth exactly
// 2*L1. Requires 3*W1^2*L1 >= block count; the two step functions must fit
// realize_capacity(W1, L1).
ReluNetwork build_f2(const std::vector<Rat>& xs, const BlockEncoding& enc, int W1, int L1);

}  // namespace memnet

#endif
