#include "memnet/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace memnet {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

namespace {

// Compares x against 2^k without constructing huge temporaries when avoidable.
int cmp_pow2(const Rat& x, long k) {
    Int lhs = x.get_num();
    Int rhs = x.get_den();
    if (k >= 0) {
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(k));
    } else {
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-k));
    }
    return cmp(lhs, rhs);
}

}  // namespace

long ceil_log2(const Rat& x) {
    if (x <= 0) throw std::domain_error("ceil_log2: argument must be positive");
    if (cmp_pow2(x, 0) <= 0) return 0;
    // Bracket via bit sizes, then settle by exact comparison.
    long k = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    if (k < 0) k = 0;
    while (cmp_pow2(x, k) > 0) ++k;          // x > 2^k: k too small
    while (k > 0 && cmp_pow2(x, k - 1) <= 0) --k;  // 2^(k-1) >= x: shrink
    return k;
}

long floor_log2(const Rat& x) {
    if (x <= 0) throw std::domain_error("floor_log2: argument must be positive");
    long k = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    while (cmp_pow2(x, k) < 0) --k;           // x < 2^k: k too big
    while (cmp_pow2(x, k + 1) >= 0) ++k;      // 2^(k+1) <= x: grow
    return k;
}

Rat pow2(long k) {
    Int one = 1;
    Int p;
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? Rat(p) : make_rat(one, p);
}

Int int_pow2(unsigned long k) {
    Int one = 1;
    Int p;
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), k);
    return p;
}

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    const std::string t = s.substr(b, e - b);
    if (t.empty()) throw std::invalid_argument("rat_from_string: empty token");

    auto is_int = [](const std::string& p, bool allow_sign) {
        if (p.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (p[0] == '-' || p[0] == '+')) i = 1;
        if (i == p.size()) return false;
        for (; i < p.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(p[i]))) return false;
        return true;
    };

    const std::size_t slash = t.find('/');
    std::string num = (slash == std::string::npos) ? t : t.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : t.substr(slash + 1);
    if (!is_int(num, true) || !is_int(den, false))
        throw std::invalid_argument("rat_from_string: malformed rational '" + t + "'");
    Int n(num), d(den);
    if (d == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    return make_rat(n, d);
}

Rat sqrt_upper(const Rat& x, int frac_bits) {
    if (x < 0) throw std::domain_error("sqrt_upper: negative argument");
    if (x == 0) return Rat(0);
    // q = ceil(sqrt(ceil(x * 4^fb))) / 2^fb
    Rat scaled = x * pow2(2L * frac_bits);
    Int m = rat_ceil(scaled);
    Int s;
    mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
    if (s * s < m) s += 1;
    return make_rat(s, int_pow2(static_cast<unsigned long>(frac_bits)));
}

namespace {

Rat decimal_rat(const std::string& int_part, const std::string& frac_digits) {
    Int num(int_part + frac_digits);
    Int den = 1;
    for (std::size_t i = 0; i < frac_digits.size(); ++i) den *= 10;
    return make_rat(num, den);
}

}  // namespace

Rat pi_lower() {
    return decimal_rat("3", "14159265358979323846264338327950288419716939937510");
}
Rat pi_upper() {
    return decimal_rat("3", "14159265358979323846264338327950288419716939937511");
}
Rat e_lower() {
    return decimal_rat("2", "71828182845904523536028747135266249775724709369995");
}
Rat e_upper() {
    return decimal_rat("2", "71828182845904523536028747135266249775724709369996");
}

namespace {

constexpr int kLogWorkBits = 120;

Rat dyadic_round(const Rat& x, int bits, bool up) {
    Rat scaled = x * pow2(bits);
    Int n = up ? rat_ceil(scaled) : rat_floor(scaled);
    return make_rat(n, int_pow2(static_cast<unsigned long>(bits)));
}

// Fractional bits of log2 via squaring, with dyadic truncation keeping the
// working precision bounded. Rounding direction is chosen so the result
// brackets the true value from the requested side.
Rat log2_directed(const Rat& x, int bits, bool upper) {
    const long k = floor_log2(x);
    Rat r = x / pow2(k);  // in [1, 2)
    Rat frac(0);
    for (int i = 1; i <= bits; ++i) {
        r = dyadic_round(r * r, kLogWorkBits, upper);
        if (r >= 2) {
            frac += pow2(-i);
            r /= 2;
        }
    }
    Rat out = Rat(k) + frac;
    if (upper) out += pow2(-bits);
    return out;
}

}  // namespace

Rat log2_lower(const Rat& x, int bits) { return log2_directed(x, bits, false); }
Rat log2_upper(const Rat& x, int bits) { return log2_directed(x, bits, true); }

}  // namespace memnet
