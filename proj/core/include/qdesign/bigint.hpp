#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qdesign {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& x) { return x.str(); }

/// Ordinary binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(const BigInt& n, std::int64_t k);

/// Integer power base^exp.
BigInt ipow(const BigInt& base, std::uint64_t exp);

}  // namespace qdesign
