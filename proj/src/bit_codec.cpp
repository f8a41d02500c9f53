#include "memnet/bit_codec.hpp"

#include <cstdlib>
#include <stdexcept>

namespace memnet {

Rat bin_value(const BitString& bits) {
    Int ip = 0;
    for (int b : bits.int_bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("bin_value: digit not 0/1");
        ip = 2 * ip + b;
    }
    Rat out(ip);
    Rat place(1);
    for (int b : bits.frac_bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("bin_value: digit not 0/1");
        place /= 2;
        if (b) out += place;
    }
    return out;
}

Int gamma_window(int m, int i, int j, const Int& v) {
    if (i < 1 || i > j || j > m) throw std::invalid_argument("gamma_window: bad indices");
    if (v < 0 || v >= int_pow2(static_cast<unsigned long>(m)))
        throw std::invalid_argument("gamma_window: value out of range for m bits");
    Int shifted;
    mpz_fdiv_q_2exp(shifted.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m - j));
    Int mask = int_pow2(static_cast<unsigned long>(j - i + 1)) - 1;
    return shifted & mask;
}

BlockEncoding encode_blocks(const std::vector<Int>& floors, const std::vector<Int>& labels0,
                            int S, int rho, int c) {
    const int N = static_cast<int>(floors.size());
    if (labels0.size() != floors.size())
        throw std::invalid_argument("encode_blocks: floors/labels length mismatch");
    if (S < 1 || S > N) throw std::invalid_argument("encode_blocks: need 1 <= S <= N");
    if (rho < 1 || c < 1) throw std::invalid_argument("encode_blocks: need rho, c >= 1");

    const Int rho_cap = int_pow2(static_cast<unsigned long>(rho));
    const Int c_cap = int_pow2(static_cast<unsigned long>(c));
    for (int i = 0; i < N; ++i) {
        if (floors[i] < 0 || floors[i] >= rho_cap)
            throw std::invalid_argument("encode_blocks: floor out of rho-bit range");
        if (labels0[i] < 0 || labels0[i] >= c_cap)
            throw std::invalid_argument("encode_blocks: label out of c-bit range");
        if (i > 0 && floors[i] - floors[i - 1] < 2)
            throw std::invalid_argument("encode_blocks: consecutive floor gap < 2");
    }

    const int B = (N + S - 1) / S;
    BlockEncoding enc;
    enc.S = S;
    enc.rho = rho;
    enc.c = c;
    for (int j = 0; j < B; ++j) {
        std::vector<Int> seg(S);
        Int uj = 0, wj = 0;
        for (int k = 0; k < S; ++k) {
            const int idx = j * S + k;
            // Padding cycles back to the first points; padding labels are 0.
            const Int& f = idx < N ? floors[idx] : floors[idx - N];
            const Int lab = idx < N ? labels0[idx] : Int(0);
            seg[k] = f;
            uj = uj * rho_cap + f;
            wj = wj * c_cap + lab;
        }
        for (int a = 0; a < S; ++a)
            for (int b = a + 1; b < S; ++b)
                if (abs(seg[a] - seg[b]) < 2)
                    throw std::invalid_argument(
                        "encode_blocks: segments inside one block closer than 2");
        enc.u.push_back(uj);
        enc.w.push_back(wj);
    }
    return enc;
}

}  // namespace memnet
