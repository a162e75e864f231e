#pragma once

#include <string>

#include "admarf/ast.hpp"

namespace admarf {

/// Deterministic canonical pretty-print of a parsed tree. Re-parsing the
/// output yields a structurally equal tree; output is byte-identical across
/// runs for the same tree.
std::string dump_ast(const ast::SpecTree& tree);

}  // namespace admarf
