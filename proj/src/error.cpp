#include "pbdcs/error.hpp"

namespace pbdcs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::Malformed: return "MALFORMED";
    case ErrorCode::DuplicatePoint: return "DUPLICATE_POINT";
    case ErrorCode::InvalidDesign: return "INVALID_DESIGN";
    case ErrorCode::Guard: return "GUARD";
    case ErrorCode::UnsupportedOrder: return "UNSUPPORTED_ORDER";
    case ErrorCode::NonprimeReplication: return "NONPRIME_REPLICATION";
    case ErrorCode::NonconstantReplication: return "NONCONSTANT_REPLICATION";
    case ErrorCode::ZeroReplication: return "ZERO_REPLICATION";
    case ErrorCode::InfeasibleSwap: return "INFEASIBLE_SWAP";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::RankDeficient: return "RANK_DEFICIENT";
    case ErrorCode::DegenerateFrame: return "DEGENERATE_FRAME";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

}  // namespace pbdcs
