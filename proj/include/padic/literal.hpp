#pragma once

#include <string_view>

#include "padic/padic_number.hpp"

namespace padic {

/// Reads a p-adic literal. Accepted forms:
///   "a", "-a/b"                      rationals
///   "p^v * (d0,d1,...)"              digit form; `p` may also be written as
///                                    the numeric prime, precision = #digits
///   "1+p^t*u", "3 - 5^2*7/2"         sums of rational multiples of p-powers
/// Throws std::invalid_argument on malformed input.
PadicNumber parse_literal(std::string_view text, prime_t p, int precision);

/// Exact rational value of a literal without digit groups.
mpq_class parse_rational_expression(std::string_view text, prime_t p);

}  // namespace padic
