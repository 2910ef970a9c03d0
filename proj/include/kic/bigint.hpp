#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace kic {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// k! for k >= 0.
BigInt factorial(int k);

// Product k * (k-2) * (k-4) * ... down to 1 or 2; defined as 1 for k <= 0.
BigInt double_factorial(int k);

}  // namespace kic
