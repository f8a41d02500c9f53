#ifndef MEMNET_BIT_EXTRACTOR_HPP
#define MEMNET_BIT_EXTRACTOR_HPP

#include "memnet/network.hpp"

namespace memnet {

// Width cap a depth-L extractor of m bits must respect: 2^(ceil(m/L)+2) + 2.
int extractor_width_cap(int m, int L);

// Net mapping a dyadic b = BIN(0.b1...bn) to (BIN(b1..bm), BIN(0.b_{m+1}..b_n)).
// 1 input, 2 outputs, depth exactly L, width <= extractor_width_cap(m, L).
// Behavior on non-dyadic inputs is unspecified.
ReluNetwork build_extractor(int n, int m, int L);

// Interval indicator H(x, y): exactly 1 for x in [y, y+1], exactly 0 for
// x >= y + 3/2 or x <= y - 1/2, within [0, 1] in between. Width 2, depth 2.
ReluNetwork build_indicator();

// Gate phi(ytilde, t) = sigma(2^(c+1)*ytilde - 2^(c+1) + t): passes t through
// when ytilde = 1, yields 0 when ytilde = 0 (for 0 <= t <= 2^c). Width 1,
// depth 1.
ReluNetwork build_gate(int c);

// Segment lookup net of the memorizer: input (x, u, w) with u packing S
// rho-bit segments and w packing S c-bit segments; when floor(x) equals the
// j-th u-segment (segments pairwise >= 2 apart, x >= 0), the output is the
// j-th c-bit window of w. 3 inputs, 1 output, depth exactly S*(T+3).
ReluNetwork build_f3(int rho, int c, int S, int T);

}  // namespace memnet

#endif
