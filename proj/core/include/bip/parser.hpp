#pragma once

#include <string_view>

#include "bip/bunch.hpp"
#include "bip/formula.hpp"

namespace bip {

// Concrete syntax, with precedence from tightest to loosest:
//
//   formula   *   &   |   ->/-*        (the two implications share one level,
//                                       are right-associative, and may not be
//                                       mixed without parentheses)
//   bunch     ,   ;                    (comma binds tighter; both associate
//                                       to the left)
//
// Constants are written top/bot/1, units Em/Ea, the turnstile |-.
// All three throw ParseError with a byte offset on malformed input.
FormulaPtr parse_formula(std::string_view text);
BunchPtr parse_bunch(std::string_view text);
RawSequent parse_sequent(std::string_view text);

} // namespace bip
