#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace admarf {

/// Position of a token or declaration in a source file. Lines and columns
/// are 1-based; length is measured in characters.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

enum class Severity { Error, Warning };

/// A parse-time diagnostic. Errors carry either a set of expected token
/// spellings or a free-form message.
struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;

  /// Renders as `file:line:col: error: message`. When `color` is set the
  /// severity word is wrapped in ANSI codes.
  std::string render(bool color = false) const;
};

std::string render_diagnostics(const std::vector<Diagnostic>& diags, bool color = false);

}  // namespace admarf
