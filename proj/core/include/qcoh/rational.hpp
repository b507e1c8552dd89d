#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qcoh {

// Exact rational scalar. cpp_rational keeps gcd(num, den) = 1 and den > 0 by
// construction, which is exactly the invariant we need.
using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

inline std::string to_string(const Q& q) { return q.str(); }

} // namespace qcoh
