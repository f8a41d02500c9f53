#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "memnet/rat.hpp"

using namespace memnet;

namespace {

// Unreduced-fraction oracle for arithmetic checks.
struct RawFrac {
    Int num, den;  // den != 0, sign unconstrained
};

bool raw_equal(const RawFrac& f, const Rat& q) {
    return f.num * q.get_den() == q.get_num() * f.den;
}

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    return make_rat(num(rng), den(rng));
}

// Repeated-doubling oracle for ceil_log2.
long ceil_log2_oracle(const Rat& x) {
    long k = 0;
    Rat p(1);
    while (p < x) {
        p *= 2;
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("floor and basic arithmetic") {
    CHECK(rat_floor(make_rat(7, 2)) == 3);
    CHECK(make_rat(1, 3) + make_rat(1, 6) == make_rat(1, 2));
    CHECK(rat_floor(make_rat(-1, 2)) == -1);
    CHECK(rat_ceil(make_rat(7, 2)) == 4);
    CHECK(rat_ceil(make_rat(-1, 2)) == 0);
    CHECK_THROWS_AS(make_rat(1, 0), std::domain_error);
}

TEST_CASE("arithmetic agrees with an unreduced-fraction oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-500, 500);
    std::uniform_int_distribution<long> den(1, 500);
    for (int i = 0; i < 10000; ++i) {
        const long an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
        const Rat a = make_rat(an, ad), b = make_rat(bn, bd);
        CHECK(raw_equal({Int(an) * bd + Int(bn) * ad, Int(ad) * bd}, a + b));
        CHECK(raw_equal({Int(an) * bd - Int(bn) * ad, Int(ad) * bd}, a - b));
        CHECK(raw_equal({Int(an) * bn, Int(ad) * bd}, a * b));
        if (bn != 0) CHECK(raw_equal({Int(an) * bd, Int(ad) * bn}, a / b));
    }
}

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(Rat(8)) == 3);
    CHECK(ceil_log2(Rat(9)) == 4);
    CHECK(ceil_log2(Rat(2506628)) == 22);
    CHECK(ceil_log2(Rat(1)) == 0);
    CHECK(ceil_log2(make_rat(1, 7)) == 0);
    CHECK_THROWS_AS(ceil_log2(Rat(0)), std::domain_error);
    CHECK_THROWS_AS(ceil_log2(Rat(-3)), std::domain_error);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(1, 1 << 20);
    std::uniform_int_distribution<long> den(1, 1 << 10);
    for (int i = 0; i < 2000; ++i) {
        const Rat x = make_rat(num(rng), den(rng));
        const long k = ceil_log2(x);
        CHECK(k == ceil_log2_oracle(x));
        CHECK(pow2(k) >= x);
        if (k > 0) CHECK(pow2(k - 1) < x);
    }
}

TEST_CASE("floor_log2") {
    CHECK(floor_log2(Rat(8)) == 3);
    CHECK(floor_log2(Rat(9)) == 3);
    CHECK(floor_log2(make_rat(1, 2)) == -1);
    CHECK(floor_log2(make_rat(3, 8)) == -2);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> num(1, 1 << 20);
    for (int i = 0; i < 2000; ++i) {
        const Rat x = make_rat(num(rng), num(rng));
        const long k = floor_log2(x);
        CHECK(pow2(k) <= x);
        CHECK(pow2(k + 1) > x);
    }
}

TEST_CASE("canonical text round-trip") {
    CHECK(rat_to_string(Rat(3)) == "3");
    CHECK(rat_to_string(make_rat(-1, 2)) == "-1/2");
    CHECK(rat_to_string(Rat(0)) == "0");
    CHECK(rat_from_string("  7/3 ") == make_rat(7, 3));
    CHECK(rat_from_string("-5") == Rat(-5));
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/-2"), std::invalid_argument);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 5000; ++i) {
        const Rat x = random_rat(rng);
        CHECK(rat_from_string(rat_to_string(x)) == x);
    }
}

TEST_CASE("sqrt_upper is a directed upper bound") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> num(1, 100000);
    for (int i = 0; i < 500; ++i) {
        const long a = num(rng), b = num(rng);
        const Rat x = make_rat(std::max(a, b), std::min(a, b));  // x >= 1
        const Rat q = sqrt_upper(x, 22);
        CHECK(q * q >= x);
        const Rat below = q - 3 * pow2(-22);
        CHECK(below * below < x);
    }
    CHECK(sqrt_upper(Rat(4), 22) == 2);
    CHECK(sqrt_upper(Rat(0), 22) == 0);
}

TEST_CASE("constant brackets") {
    CHECK(pi_lower() < pi_upper());
    CHECK(pi_upper() - pi_lower() < pow2(-100));
    CHECK(pi_lower() > make_rat(314159, 100000));
    CHECK(pi_upper() < make_rat(314160, 100000));
    CHECK(e_lower() < e_upper());
    CHECK(e_lower() > make_rat(271828, 100000));
    CHECK(e_upper() < make_rat(271829, 100000));
}

TEST_CASE("log2 directed brackets") {
    // Exact powers of two are pinned.
    CHECK(log2_lower(Rat(8), 30) == 3);
    CHECK(log2_upper(Rat(8), 30) - 3 <= pow2(-30));
    CHECK(log2_lower(Rat(2), 30) == 1);
    // log2(10) = 3.3219280948...
    CHECK(log2_lower(Rat(10), 30) > make_rat(3321928, 1000000));
    CHECK(log2_upper(Rat(10), 30) < make_rat(3321929, 1000000));
    // Bracket ordering and tightness on random values.
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<long> num(1, 1000000);
    for (int i = 0; i < 200; ++i) {
        const Rat x = make_rat(num(rng), num(rng));
        const Rat lo = log2_lower(x, 30);
        const Rat hi = log2_upper(x, 30);
        CHECK(lo <= hi);
        CHECK(hi - lo <= pow2(-20));
    }
}
