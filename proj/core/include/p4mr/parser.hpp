#ifndef P4MR_PARSER_HPP
#define P4MR_PARSER_HPP

#include <string_view>

#include "p4mr/ast.hpp"

namespace p4mr {

// Parse the dataflow DSL into a validated AST.
//
// Grammar (whitespace and newlines insignificant, `#` starts a line comment,
// identifiers [A-Za-z_][A-Za-z0-9_]*, case-sensitive):
//
//   program   := statement*
//   statement := IDENT ":=" expr ";"
//   expr      := "store" "<" type ">" "(" STRING ")"
//              | "MAP" "(" IDENT "," transform ")"
//              | "SUM" "(" IDENT "," IDENT ")"
//   type      := "uint_64" | "uint_32"
//   transform := "IDENT" | "WORD_TUPLE"
//
// Validation: label names unique, every referenced label defined by an
// earlier statement. Throws SyntaxError / Error(DuplicateLabel /
// UndefinedReference / UnknownType / UnknownTransform).
Ast parse(std::string_view program_text);

}  // namespace p4mr

#endif
