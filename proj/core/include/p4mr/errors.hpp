#ifndef P4MR_ERRORS_HPP
#define P4MR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace p4mr {

enum class ErrKind {
  // frontend
  SyntaxError,
  DuplicateLabel,
  UndefinedReference,
  UnknownType,
  UnknownTransform,
  SchemaError,
  // topology / planning
  DisconnectedTopology,
  DuplicateId,
  NonPositiveCapacity,
  UnknownHost,
  RoutingIdOverflow,
  // wire
  BadPreamble,
  TruncatedFrame,
  ZeroOrigin,
  WordTooLong,
  MtuTooSmall,
  // model / sim
  InvalidParams,
  ZeroDenominator,
  StallDetected,
  EmptyTrace,
  // io
  IoError,
};

const char* err_kind_name(ErrKind k);

// Single exception type for all domain errors; `kind` is the stable
// machine-readable discriminator, `what()` the rendered message.
class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, std::string msg)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
        m_kind(kind) {}

  ErrKind kind() const { return m_kind; }

 private:
  ErrKind m_kind;
};

// Parse errors carry a source position (1-based line/column).
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string expected)
      : Error(ErrKind::SyntaxError,
              "line " + std::to_string(line) + ", col " +
                  std::to_string(column) + ": expected " + expected),
        m_line(line),
        m_column(column),
        m_expected(std::move(expected)) {}

  int line() const { return m_line; }
  int column() const { return m_column; }
  const std::string& expected() const { return m_expected; }

 private:
  int m_line;
  int m_column;
  std::string m_expected;
};

}  // namespace p4mr

#endif
