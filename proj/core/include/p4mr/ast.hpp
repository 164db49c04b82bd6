#ifndef P4MR_AST_HPP
#define P4MR_AST_HPP

#include <string>
#include <vector>

namespace p4mr {

enum class FuncType { Store, Map, Sum };
enum class ValueType { U64, U32 };

const char* func_type_name(FuncType t);
const char* value_type_name(ValueType t);

// Builtin MAP transforms. Ident passes items through unchanged;
// WordTuple turns a word stream into <word,1> items for Word-Count.
enum class Transform { Ident, WordTuple };

const char* transform_name(Transform t);

// One statement of the dataflow program. Exactly one of the param groups
// is meaningful, selected by func_type:
//   Store: locator ("host:path")
//   Map:   inputs[0] + transform
//   Sum:   inputs[0], inputs[1]
struct AstNode {
  int label_index = 0;          // consecutive from 0 in statement order
  std::string label_name;
  FuncType func_type = FuncType::Store;
  ValueType value_type = ValueType::U64;
  std::string locator;
  std::vector<std::string> inputs;
  Transform transform = Transform::Ident;

  bool operator==(const AstNode&) const = default;
};

using Ast = std::vector<AstNode>;

}  // namespace p4mr

#endif
