#ifndef MEMNET_BIT_CODEC_HPP
#define MEMNET_BIT_CODEC_HPP

#include <vector>

#include "memnet/rat.hpp"

namespace memnet {

// Binary string with an integer part (most significant first) and a
// fractional part. Digits are 0/1.
struct BitString {
    std::vector<int> int_bits;
    std::vector<int> frac_bits;
};

// Value of the string: sum 2^(m-i) a_i + sum 2^(-j) b_j.
Rat bin_value(const BitString& bits);

// Integer formed by bits i..j (1-based, most significant first) of the m-bit
// zero-padded representation of v. Requires 1 <= i <= j <= m and 0 <= v < 2^m.
Int gamma_window(int m, int i, int j, const Int& v);

// Packed block encodings: u[j] packs S rho-bit floor segments, w[j] packs S
// c-bit label segments.
struct BlockEncoding {
    int S = 0;
    int rho = 0;
    int c = 0;
    std::vector<Int> u;
    std::vector<Int> w;
};

// Packs floors/labels0 into ceil(N/S) blocks of S segments each. The last
// block is padded by cycling back to the first entries (floors[0], ...) with
// padding labels 0. Requires: floors strictly increasing with consecutive
// gaps >= 2, each floor < 2^rho, each label0 < 2^c, 1 <= S < N. Throws when
// two segments inside one block would be closer than 2.
BlockEncoding encode_blocks(const std::vector<Int>& floors, const std::vector<Int>& labels0,
                            int S, int rho, int c);

}  // namespace memnet

#endif
