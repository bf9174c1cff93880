#pragma once

#include <string_view>

#include "nilvf/derivation.hpp"

namespace nilvf {

/// Parses a vector field such as "x3*d1 + d2" or "(1/2)*x2^2*d1" over
/// x1..x{nvars}. Accepts everything Derivation::to_string prints.
/// Throws ParseError with a 1-based line and column.
Derivation parse_vector_field(std::string_view text, std::size_t nvars);

/// Same grammar without d-variables, e.g. "x1^2 - 3*x2".
RatFunc parse_scalar(std::string_view text, std::size_t nvars);

}  // namespace nilvf
