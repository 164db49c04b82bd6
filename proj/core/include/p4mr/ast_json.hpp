#ifndef P4MR_AST_JSON_HPP
#define P4MR_AST_JSON_HPP

#include <string>
#include <string_view>

#include "p4mr/ast.hpp"

namespace p4mr {

// Lossless AST <-> JSON round trip. Document layout: a top-level array of
//   {"label_index", "label_name", "func_type", "value_type", "params"}
// where params is {"locator"} for STORE, {"input","transform"} for MAP and
// {"inputs":[a,b]} for SUM. Throws Error(SchemaError) naming the offending
// field on malformed documents.
std::string ast_to_json(const Ast& ast);
Ast json_to_ast(std::string_view text);

}  // namespace p4mr

#endif
