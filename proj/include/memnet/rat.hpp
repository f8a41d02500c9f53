#ifndef MEMNET_RAT_HPP
#define MEMNET_RAT_HPP

#include <gmpxx.h>

#include <string>

namespace memnet {

// All arithmetic in this project is exact. Int/Rat are GMP types; Rat is
// kept canonical (positive denominator, reduced) by every function below.
using Int = mpz_class;
using Rat = mpq_class;

// Builds a canonical rational. Throws std::domain_error when den == 0.
Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den);

// Greatest integer <= x (toward -infinity).
Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

// min{k >= 0 : 2^k >= x}, exact integer comparisons only.
// Throws std::domain_error when x <= 0.
long ceil_log2(const Rat& x);

// max{k in Z : 2^k <= x} (may be negative). Throws when x <= 0.
long floor_log2(const Rat& x);

// 2^k as a Rat; k may be negative.
Rat pow2(long k);
Int int_pow2(unsigned long k);

// Canonical text form: "num" when den == 1, else "num/den", sign on the
// numerator only. Round-trips bit-exactly through rat_from_string.
std::string rat_to_string(const Rat& x);

// Parses the canonical form, tolerating surrounding whitespace.
// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

// Smallest multiple q of 2^-frac_bits with q*q >= x (x >= 0).
// Satisfies sqrt(x) <= q <= sqrt(x) + 2^-frac_bits + epsilon.
Rat sqrt_upper(const Rat& x, int frac_bits);

// Rational brackets of transcendental constants, 48+ decimal digits tight.
Rat pi_lower();
Rat pi_upper();
Rat e_lower();
Rat e_upper();

// Directed rational brackets of log2(x) for x > 0; the pair differs by
// at most 2^-bits plus dyadic truncation slack (kept well under 2^-20
// for bits <= 30).
Rat log2_lower(const Rat& x, int bits);
Rat log2_upper(const Rat& x, int bits);

}  // namespace memnet

#endif
