#include "p4mr/errors.hpp"

namespace p4mr {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::SyntaxError: return "SyntaxError";
    case ErrKind::DuplicateLabel: return "DuplicateLabel";
    case ErrKind::UndefinedReference: return "UndefinedReference";
    case ErrKind::UnknownType: return "UnknownType";
    case ErrKind::UnknownTransform: return "UnknownTransform";
    case ErrKind::SchemaError: return "SchemaError";
    case ErrKind::DisconnectedTopology: return "DisconnectedTopology";
    case ErrKind::DuplicateId: return "DuplicateId";
    case ErrKind::NonPositiveCapacity: return "NonPositiveCapacity";
    case ErrKind::UnknownHost: return "UnknownHost";
    case ErrKind::RoutingIdOverflow: return "RoutingIdOverflow";
    case ErrKind::BadPreamble: return "BadPreamble";
    case ErrKind::TruncatedFrame: return "TruncatedFrame";
    case ErrKind::ZeroOrigin: return "ZeroOrigin";
    case ErrKind::WordTooLong: return "WordTooLong";
    case ErrKind::MtuTooSmall: return "MtuTooSmall";
    case ErrKind::InvalidParams: return "InvalidParams";
    case ErrKind::ZeroDenominator: return "ZeroDenominator";
    case ErrKind::StallDetected: return "StallDetected";
    case ErrKind::EmptyTrace: return "EmptyTrace";
    case ErrKind::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace p4mr
