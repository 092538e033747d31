#pragma once

#include <string>
#include <string_view>

#include "mcalg/term.hpp"

namespace mcalg {

/// Parses the function-prefix term grammar:
///
///   term    := "var(" nat ")" | "const(" rational ")"
///            | op "(" term "," term ")"          op in {oplus,odot,join,meet}
///            | "ominus(" term "," rational ")"
///            | "delta(" seqspec ")"
///   seqspec := "constant(" term ")" | "ominus_dyadic(" term ")"
///            | "explicit[" term ("," term)* "; tail=" term "]"
///
/// Whitespace is insignificant. Throws ParseError with a position, or
/// RangeError for constants outside [0,1].
Term parse_term(std::string_view text);

/// Deterministic textual form; parse_term(render_term(t)) == t.
/// Generator specs have no textual form and raise NotSupportedError.
std::string render_term(const Term& term);

}  // namespace mcalg
