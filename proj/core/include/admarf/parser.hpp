#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "admarf/ast.hpp"
#include "admarf/source.hpp"

namespace admarf {

struct ParseResult {
  std::unique_ptr<ast::SpecTree> tree;   // null when errors prevented a tree
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
};

/// Parses ASSL-subset source text. Never throws on malformed input; on
/// failure the result carries at least one error diagnostic. Recovery skips
/// to the next top-level keyword so several errors can be reported at once.
ParseResult parse_spec(std::string_view src, const std::string& file = "<input>");

/// Convenience: read the file and parse it. I/O failure is reported as a
/// diagnostic with an empty span.
ParseResult parse_spec_file(const std::string& path);

}  // namespace admarf
