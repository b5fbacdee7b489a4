#pragma once

#include "illume/types.hpp"

#include <functional>
#include <string>

namespace illume {

/// Compiles an arithmetic expression over x, y, z. Supports + - * / ^, unary
/// minus, pi, e, r (= |x|) and the functions pow, exp, log, sqrt, sin, cos,
/// abs, norm. Throws ParseError with the offending position.
std::function<double(const Vec&)> compile_expression(const std::string& text);

}  // namespace illume
