#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fillvol {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Renders p/q, or just p when q == 1.
std::string rat_to_string(const Rat& x);

// Accepts "p", "-p", "p/q".
Rat rat_from_string(const std::string& s);

// Largest integer <= x.
Int rat_floor(const Rat& x);

}  // namespace fillvol
