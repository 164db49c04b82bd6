#include "p4mr/ast_json.hpp"

#include <nlohmann/json.hpp>

#include "p4mr/errors.hpp"

namespace p4mr {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& field) {
  throw Error(ErrKind::SchemaError, field);
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) schema_fail(name);
  return obj.at(name);
}

std::string str_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) schema_fail(name);
  return v.get<std::string>();
}

}  // namespace

std::string ast_to_json(const Ast& ast) {
  json arr = json::array();
  for (const AstNode& n : ast) {
    json params;
    switch (n.func_type) {
      case FuncType::Store:
        params = {{"locator", n.locator}};
        break;
      case FuncType::Map:
        params = {{"input", n.inputs.at(0)},
                  {"transform", transform_name(n.transform)}};
        break;
      case FuncType::Sum:
        params = {{"inputs", n.inputs}};
        break;
    }
    arr.push_back({{"label_index", n.label_index},
                   {"label_name", n.label_name},
                   {"func_type", func_type_name(n.func_type)},
                   {"value_type", value_type_name(n.value_type)},
                   {"params", params}});
  }
  return arr.dump(2) + "\n";
}

Ast json_to_ast(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) schema_fail("<document>");

  Ast ast;
  for (const json& obj : doc) {
    AstNode n;
    const json& idx = field(obj, "label_index");
    if (!idx.is_number_integer() || idx.get<int>() < 0)
      schema_fail("label_index");
    n.label_index = idx.get<int>();
    n.label_name = str_field(obj, "label_name");

    std::string ft = str_field(obj, "func_type");
    std::string vt = str_field(obj, "value_type");
    if (vt == "U64")
      n.value_type = ValueType::U64;
    else if (vt == "U32")
      n.value_type = ValueType::U32;
    else
      schema_fail("value_type");

    const json& params = field(obj, "params");
    if (ft == "STORE") {
      n.func_type = FuncType::Store;
      n.locator = str_field(params, "locator");
    } else if (ft == "MAP") {
      n.func_type = FuncType::Map;
      n.inputs.push_back(str_field(params, "input"));
      std::string tr = str_field(params, "transform");
      if (tr == "IDENT")
        n.transform = Transform::Ident;
      else if (tr == "WORD_TUPLE")
        n.transform = Transform::WordTuple;
      else
        schema_fail("transform");
    } else if (ft == "SUM") {
      n.func_type = FuncType::Sum;
      const json& ins = field(params, "inputs");
      if (!ins.is_array() || ins.size() != 2) schema_fail("inputs");
      for (const json& i : ins) {
        if (!i.is_string()) schema_fail("inputs");
        n.inputs.push_back(i.get<std::string>());
      }
    } else {
      schema_fail("func_type");
    }
    ast.push_back(std::move(n));
  }

  // the same structural rules parse() enforces
  for (size_t i = 0; i < ast.size(); ++i) {
    if (ast[i].label_index != static_cast<int>(i)) schema_fail("label_index");
    for (size_t j = 0; j < i; ++j)
      if (ast[j].label_name == ast[i].label_name) schema_fail("label_name");
    for (const std::string& in : ast[i].inputs) {
      bool found = false;
      for (size_t j = 0; j < i; ++j)
        if (ast[j].label_name == in) found = true;
      if (!found) schema_fail("params");
    }
  }
  return ast;
}

}  // namespace p4mr
