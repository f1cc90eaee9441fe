#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace msca {

// All values in the toolkit are exact. Int/Rat are GMP-backed arbitrary
// precision integers and canonical rationals (lowest terms, denominator > 0).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string render_rat(const Rat& r);

// Inverse of render_rat. Also accepts non-canonical input like "2/4" or "-3/6"
// and normalizes it. Throws UsageError on malformed text or zero denominator.
Rat parse_rat(std::string_view text);

// Like parse_rat but additionally accepts decimal literals ("0.25" -> 1/4).
// Used for CLI flags; file formats always use the p/q form.
Rat parse_rat_or_decimal(std::string_view text);

// Approximate decimal rendering for reports only; never feeds a computation.
// Rounds to `significant` digits, ties to even.
std::string render_decimal(const Rat& r, int significant = 20);

// lcm of the denominators of a list of rationals (1 for an empty list).
Int lcm_denominators(const std::vector<Rat>& values);

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace msca
