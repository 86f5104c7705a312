#pragma once

#include <string_view>
#include <vector>

#include "portalis/dsl/ast.hpp"
#include "portalis/dsl/parser.hpp"
#include "portalis/world.hpp"

namespace portalis::dsl {

/// Installs every declaration of `ast` into `world`, or none: on any
/// semantic error `world` is left untouched and the diagnostics returned.
std::vector<Diagnostic> load(const SchemaAst& ast, World& world);

/// parse() then load().
std::vector<Diagnostic> load_text(std::string_view text, World& world);

}  // namespace portalis::dsl
