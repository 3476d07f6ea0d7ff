#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbdcs {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  Malformed,
  DuplicatePoint,
  InvalidDesign,
  Guard,
  UnsupportedOrder,
  NonprimeReplication,
  NonconstantReplication,
  ZeroReplication,
  InfeasibleSwap,
  Infeasible,
  RankDeficient,
  DegenerateFrame,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a module-qualified code ("design.OUT_OF_RANGE").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& what)
      : std::runtime_error(what), code_(code), module_(module) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }
  std::string qualified_code() const { return module_ + "." + std::string(to_string(code_)); }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace pbdcs
