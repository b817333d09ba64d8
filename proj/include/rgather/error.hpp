#pragma once

#include <stdexcept>
#include <string>

namespace rgather {

enum class Errc {
  CycleDetected,
  Disconnected,
  NegativeLength,
  InvalidVertex,
  NonPositiveUnit,
  DanglingReference,
  EmptyOpenSet,
  InfeasibleInstance,
  TooLarge,
  CorruptTables,
  ParseError,
  ValidationError,
  InvalidParams,
  UsageError,
  Overflow,
};

const char* errc_name(Errc code);

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NegativeLength: return "NegativeLength";
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::NonPositiveUnit: return "NonPositiveUnit";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::EmptyOpenSet: return "EmptyOpenSet";
    case Errc::InfeasibleInstance: return "InfeasibleInstance";
    case Errc::TooLarge: return "TooLarge";
    case Errc::CorruptTables: return "CorruptTables";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::UsageError: return "UsageError";
    case Errc::Overflow: return "Overflow";
  }
  return "UnknownError";
}

}  // namespace rgather
