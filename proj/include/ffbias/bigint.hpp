#pragma once

// Arbitrary-precision integers backed by Boost.Multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ffbias {

using BigInt = boost::multiprecision::cpp_int;

using boost::multiprecision::bit_test;
using boost::multiprecision::msb;

inline BigInt ipow(BigInt base, unsigned e) { return boost::multiprecision::pow(base, e); }

inline int sign(BigInt const& x) { return x.sign(); }

inline std::string to_string(BigInt const& x) { return x.str(); }

inline BigInt parse_bigint(std::string const& s) { return BigInt(s); }

/// Nearest long double; overflows to inf past ~1e4932.
inline long double to_long_double(BigInt const& x) { return x.convert_to<long double>(); }

} // namespace ffbias
