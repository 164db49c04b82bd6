#include "p4mr/parser.hpp"

#include <cctype>
#include <map>
#include <set>

#include "p4mr/errors.hpp"

namespace p4mr {

namespace {

enum class Tok { Ident, Assign, Semi, LParen, RParen, Comma, Lt, Gt, Str, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : m_src(src) {}

  Token next() {
    skip_ws();
    int line = m_line, col = m_col;
    if (m_pos >= m_src.size()) return {Tok::End, "", line, col};
    char c = m_src[m_pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = m_pos;
      while (m_pos < m_src.size() &&
             (std::isalnum(static_cast<unsigned char>(m_src[m_pos])) ||
              m_src[m_pos] == '_'))
        advance();
      return {Tok::Ident, std::string(m_src.substr(start, m_pos - start)),
              line, col};
    }
    if (c == ':') {
      if (m_pos + 1 < m_src.size() && m_src[m_pos + 1] == '=') {
        advance();
        advance();
        return {Tok::Assign, ":=", line, col};
      }
      throw SyntaxError(line, col, "':='");
    }
    if (c == '"') {
      advance();
      size_t start = m_pos;
      while (m_pos < m_src.size() && m_src[m_pos] != '"' &&
             m_src[m_pos] != '\n')
        advance();
      if (m_pos >= m_src.size() || m_src[m_pos] != '"')
        throw SyntaxError(line, col, "closing '\"'");
      std::string s(m_src.substr(start, m_pos - start));
      advance();
      return {Tok::Str, s, line, col};
    }
    advance();
    switch (c) {
      case ';': return {Tok::Semi, ";", line, col};
      case '(': return {Tok::LParen, "(", line, col};
      case ')': return {Tok::RParen, ")", line, col};
      case ',': return {Tok::Comma, ",", line, col};
      case '<': return {Tok::Lt, "<", line, col};
      case '>': return {Tok::Gt, ">", line, col};
      default:
        throw SyntaxError(line, col, "statement");
    }
  }

 private:
  void advance() {
    if (m_src[m_pos] == '\n') {
      ++m_line;
      m_col = 1;
    } else {
      ++m_col;
    }
    ++m_pos;
  }

  void skip_ws() {
    while (m_pos < m_src.size()) {
      char c = m_src[m_pos];
      if (c == '#') {
        while (m_pos < m_src.size() && m_src[m_pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view m_src;
  size_t m_pos = 0;
  int m_line = 1;
  int m_col = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : m_lex(src) { m_cur = m_lex.next(); }

  Ast run() {
    Ast ast;
    while (m_cur.kind != Tok::End) {
      ast.push_back(statement(static_cast<int>(ast.size())));
    }
    return ast;
  }

 private:
  Token expect(Tok kind, const char* what) {
    if (m_cur.kind != kind)
      throw SyntaxError(m_cur.line, m_cur.col, what);
    Token t = m_cur;
    m_cur = m_lex.next();
    return t;
  }

  // A referenced label must already be defined (define-before-use); this
  // also keeps the resulting DAG acyclic by construction.
  std::string input_ref(const Token& site) {
    if (!m_defined.count(site.text))
      throw Error(ErrKind::UndefinedReference,
                  "'" + site.text + "' at line " + std::to_string(site.line) +
                      ", col " + std::to_string(site.col));
    return site.text;
  }

  AstNode statement(int index) {
    Token name = expect(Tok::Ident, "label identifier");
    expect(Tok::Assign, "':='");

    AstNode node;
    node.label_index = index;
    node.label_name = name.text;

    Token head = expect(Tok::Ident, "'store', 'MAP' or 'SUM'");
    if (head.text == "store") {
      node.func_type = FuncType::Store;
      expect(Tok::Lt, "'<'");
      Token ty = expect(Tok::Ident, "value type");
      if (ty.text == "uint_64")
        node.value_type = ValueType::U64;
      else if (ty.text == "uint_32")
        node.value_type = ValueType::U32;
      else
        throw Error(ErrKind::UnknownType, "'" + ty.text + "' at line " +
                                              std::to_string(ty.line));
      expect(Tok::Gt, "'>'");
      expect(Tok::LParen, "'('");
      node.locator = expect(Tok::Str, "locator string").text;
      expect(Tok::RParen, "')'");
    } else if (head.text == "MAP") {
      node.func_type = FuncType::Map;
      expect(Tok::LParen, "'('");
      Token in = expect(Tok::Ident, "input label");
      node.inputs.push_back(input_ref(in));
      expect(Tok::Comma, "','");
      Token tr = expect(Tok::Ident, "transform name");
      if (tr.text == "IDENT")
        node.transform = Transform::Ident;
      else if (tr.text == "WORD_TUPLE")
        node.transform = Transform::WordTuple;
      else
        throw Error(ErrKind::UnknownTransform, "'" + tr.text + "' at line " +
                                                   std::to_string(tr.line));
      expect(Tok::RParen, "')'");
      node.value_type = m_types.at(node.inputs[0]);
    } else if (head.text == "SUM") {
      node.func_type = FuncType::Sum;
      expect(Tok::LParen, "'('");
      node.inputs.push_back(input_ref(expect(Tok::Ident, "input label")));
      expect(Tok::Comma, "','");
      node.inputs.push_back(input_ref(expect(Tok::Ident, "input label")));
      expect(Tok::RParen, "')'");
      // a SUM over mixed widths accumulates at the wider width
      node.value_type = (m_types.at(node.inputs[0]) == ValueType::U64 ||
                         m_types.at(node.inputs[1]) == ValueType::U64)
                            ? ValueType::U64
                            : ValueType::U32;
    } else {
      throw SyntaxError(head.line, head.col, "'store', 'MAP' or 'SUM'");
    }
    expect(Tok::Semi, "';'");

    if (m_defined.count(node.label_name))
      throw Error(ErrKind::DuplicateLabel,
                  "'" + node.label_name + "' at line " +
                      std::to_string(name.line));
    m_defined.insert(node.label_name);
    m_types[node.label_name] = node.value_type;
    return node;
  }

  Lexer m_lex;
  Token m_cur{Tok::End, "", 0, 0};
  std::set<std::string> m_defined;
  std::map<std::string, ValueType> m_types;
};

}  // namespace

Ast parse(std::string_view program_text) { return Parser(program_text).run(); }

const char* func_type_name(FuncType t) {
  switch (t) {
    case FuncType::Store: return "STORE";
    case FuncType::Map: return "MAP";
    case FuncType::Sum: return "SUM";
  }
  return "?";
}

const char* value_type_name(ValueType t) {
  return t == ValueType::U64 ? "U64" : "U32";
}

const char* transform_name(Transform t) {
  return t == Transform::Ident ? "IDENT" : "WORD_TUPLE";
}

}  // namespace p4mr
