#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sl2reach {

using Int = boost::multiprecision::cpp_int;

}  // namespace sl2reach
