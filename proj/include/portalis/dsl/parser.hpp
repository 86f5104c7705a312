#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "portalis/dsl/ast.hpp"

namespace portalis::dsl {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
    std::size_t line = 1;
    std::size_t column = 1;
    std::string lexeme;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// `path:line:col: severity: message`
std::string format(const Diagnostic& diagnostic, std::string_view path);

struct ParseResult {
    std::optional<SchemaAst> ast;
    std::vector<Diagnostic> diagnostics;
    bool ok() const noexcept { return ast.has_value(); }
};

bool valid_utf8(std::string_view text) noexcept;
bool is_keyword(std::string_view word) noexcept;

/// Parses schema text. Total: any input yields either an AST or at least
/// one error diagnostic, never both.
ParseResult parse(std::string_view text);

/// Canonical formatting. parse(print(ast)) equals ast.
std::string print(const SchemaAst& ast);

}  // namespace portalis::dsl
