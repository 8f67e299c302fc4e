#pragma once

#include <string>
#include <string_view>

#include "mixcurve/poly.hpp"

namespace mixcurve {

/// Which variable names the text may use: u/conj(u) or z1, z2 and conjugates.
enum class VariableFamily { automatic, single, pair };

/// Grammar (whitespace between tokens is ignored):
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*'? factor)*
///   factor := '-' factor | base ('^' uint)?
///   base   := number | 'i' | 'u' | 'conj(u)' | 'z1' | 'z2'
///           | 'conj(z1)' | 'conj(z2)' | '(' expr ')'
///
/// Numbers are decimal literals with optional fraction and exponent.
/// With VariableFamily::automatic the result has one variable unless z1/z2 appear.
/// Throws ParseError (with the character offset) on any violation.
MixedPoly parse(std::string_view text, VariableFamily family = VariableFamily::automatic);

/// Canonical text form; parse(print(f)) == f exactly.
/// Terms are ordered by descending total degree, then descending holomorphic exponents.
std::string print(const MixedPoly &f);

/// Description of the accepted grammar, for usage messages.
std::string_view grammar_help();

}  // namespace mixcurve
