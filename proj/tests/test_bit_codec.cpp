#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "memnet/bit_codec.hpp"

using namespace memnet;

TEST_CASE("bin_value") {
    CHECK(bin_value({{1, 0, 1}, {}}) == 5);
    CHECK(bin_value({{1, 0}, {1}}) == make_rat(5, 2));
    CHECK(bin_value({{0}, {1, 0, 1}}) == make_rat(5, 8));
    CHECK(bin_value({{}, {}}) == 0);
    CHECK_THROWS_AS(bin_value({{2}, {}}), std::invalid_argument);
}

TEST_CASE("gamma_window") {
    CHECK(gamma_window(1, 1, 1, 1) == 1);
    CHECK(gamma_window(2, 1, 1, 1) == 0);
    // 42 = 101010 in 6 bits
    CHECK(gamma_window(6, 1, 3, 42) == 5);
    CHECK(gamma_window(6, 4, 6, 42) == 2);
    CHECK_THROWS_AS(gamma_window(6, 0, 3, 42), std::invalid_argument);
    CHECK_THROWS_AS(gamma_window(6, 4, 3, 42), std::invalid_argument);
    CHECK_THROWS_AS(gamma_window(6, 1, 6, 64), std::invalid_argument);

    // Shift/mask oracle on random values.
    std::mt19937_64 rng(31);
    for (int t = 0; t < 2000; ++t) {
        const int m = 1 + static_cast<int>(rng() % 20);
        const unsigned long v = rng() % (1UL << m);
        const int i = 1 + static_cast<int>(rng() % m);
        const int j = i + static_cast<int>(rng() % (m - i + 1));
        const unsigned long expect = (v >> (m - j)) & ((1UL << (j - i + 1)) - 1);
        CHECK(gamma_window(m, i, j, Int(static_cast<long>(v))) ==
              Int(static_cast<long>(expect)));
    }
}

TEST_CASE("encode_blocks worked examples") {
    {
        const BlockEncoding enc = encode_blocks({Int(2), Int(5)}, {Int(1), Int(0)}, 2, 3, 1);
        REQUIRE(enc.u.size() == 1);
        CHECK(enc.u[0] == 21);  // 010 101
        CHECK(enc.w[0] == 2);   // 1 0
    }
    {
        // N=3, S=2: last block is (4, pad copying floors[0]=0), padding label 0.
        const BlockEncoding enc =
            encode_blocks({Int(0), Int(2), Int(4)}, {Int(1), Int(1), Int(1)}, 2, 3, 1);
        REQUIRE(enc.u.size() == 2);
        CHECK(enc.u[1] == 32);  // 100 000
        // Recovery identity for the genuine index i=3 (block 2, slot 0).
        CHECK(gamma_window(6, 1, 3, enc.u[1]) == 4);
        CHECK(gamma_window(2, 1, 1, enc.w[1]) == 1);
    }
    {
        const BlockEncoding enc = encode_blocks({Int(0), Int(2), Int(4), Int(6)},
                                                {Int(0), Int(0), Int(0), Int(0)}, 2, 3, 1);
        for (const Int& w : enc.w) CHECK(w == 0);
    }
}

TEST_CASE("encode_blocks errors") {
    // Gap < 2 between consecutive floors.
    CHECK_THROWS_AS(encode_blocks({Int(0), Int(1), Int(4)}, {Int(0), Int(0), Int(0)}, 2, 3, 1),
                    std::invalid_argument);
    // Floor out of rho-bit range.
    CHECK_THROWS_AS(encode_blocks({Int(0), Int(9)}, {Int(0), Int(0)}, 1, 3, 1),
                    std::invalid_argument);
    // S > N.
    CHECK_THROWS_AS(encode_blocks({Int(0), Int(2)}, {Int(0), Int(0)}, 3, 3, 1),
                    std::invalid_argument);
    // Label out of c-bit range.
    CHECK_THROWS_AS(encode_blocks({Int(0), Int(2), Int(4)}, {Int(0), Int(2), Int(0)}, 2, 3, 1),
                    std::invalid_argument);
}

TEST_CASE("round trip: windows of an encoding reproduce the inputs") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 200; ++t) {
        const int S = 1 + static_cast<int>(rng() % 4);
        const int N = S + 1 + static_cast<int>(rng() % 12);
        const int rho = 6 + static_cast<int>(rng() % 5);
        const int c = 1 + static_cast<int>(rng() % 3);
        std::vector<Int> floors, labels0;
        Int cur = static_cast<long>(rng() % 3);
        for (int i = 0; i < N; ++i) {
            floors.push_back(cur);
            cur += 2 + static_cast<long>(rng() % 3);
            labels0.push_back(Int(static_cast<long>(rng() % (1UL << c))));
        }
        if (floors.back() >= int_pow2(rho)) continue;  // exceeded the bit budget
        const BlockEncoding enc = encode_blocks(floors, labels0, S, rho, c);
        const int B = static_cast<int>(enc.u.size());
        CHECK(B == (N + S - 1) / S);
        for (int i = 0; i < N; ++i) {
            const int j = i / S;
            const int k = i % S;
            CHECK(gamma_window(rho * S, k * rho + 1, (k + 1) * rho, enc.u[j]) == floors[i]);
            CHECK(gamma_window(c * S, k * c + 1, (k + 1) * c, enc.w[j]) == labels0[i]);
        }
        // Segment separation >= 2 inside every block (contract assertion).
        for (int j = 0; j < B; ++j)
            for (int a = 0; a < S; ++a)
                for (int b = a + 1; b < S; ++b) {
                    const Int sa = gamma_window(rho * S, a * rho + 1, (a + 1) * rho, enc.u[j]);
                    const Int sb = gamma_window(rho * S, b * rho + 1, (b + 1) * rho, enc.u[j]);
                    CHECK(abs(sa - sb) >= 2);
                }
    }
}
