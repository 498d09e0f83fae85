#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace diffalg {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

}  // namespace diffalg
