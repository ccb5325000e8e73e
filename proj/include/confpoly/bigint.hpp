#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace confpoly {

// Exact integer counts. These grow super-exponentially (the n = 60 tables
// have entries with ~80 digits), so fixed-width types are not an option.
using BigCount = boost::multiprecision::cpp_int;

// Exact ratios of counts.
using BigRational = boost::multiprecision::cpp_rational;

}  // namespace confpoly
