#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lfcc {

// Exact rational arithmetic. Delivery times, DoF values, and converse
// bounds are all identities over small integers, so nothing in the bound
// pipeline is allowed to touch floating point.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string rat_str(const Rat& r);

// Accepts "3", "-3", "1/2" and plain decimals such as "0.25".
Rat parse_rational(const std::string& text);

bool rat_is_integer(const Rat& r);

// Requires rat_is_integer(r) and a value that fits in long long.
long long rat_to_int(const Rat& r);

BigInt rat_floor(const Rat& r);
BigInt rat_ceil(const Rat& r);

double rat_to_double(const Rat& r);

}  // namespace lfcc
