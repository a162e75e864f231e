#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "admarf/source.hpp"
#include "admarf/token.hpp"

namespace admarf {

struct LexResult {
  std::vector<Token> tokens;  // always terminated by an Eof token
  std::vector<Diagnostic> diagnostics;
};

/// Tokenizes ASSL-subset source text. Keywords are the UPPERCASE words of
/// the grammar; `//` comments run to end of line and are discarded; CRLF
/// and LF line endings are both accepted. Illegal characters produce a
/// diagnostic and are skipped, so lexing is total.
LexResult tokenize(std::string_view src, const std::string& file = "<input>");

bool is_reserved_word(std::string_view word);

}  // namespace admarf
