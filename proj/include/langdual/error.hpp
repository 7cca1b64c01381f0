#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace langdual {

// Error categories raised across the library. The CLI maps these onto exit
// codes: budget-type errors exit with 3, usage/schema errors with 2.
enum class Errc {
  SingularMatrix,
  NonPerfectPairing,
  MismatchedGroups,
  InvalidCharacter,
  NotSymmetrizable,
  NotPositiveDefinite,
  PairingNotPerfect,
  DiagonalNotTwo,
  OffDiagonalPositive,
  NonTermination,
  UnknownType,
  NotDominant,
  NotSemisimple,
  NotSimplyConnected,
  MixedRootSystems,
  BallTooLarge,
  SupportEscapesBall,
  NotCertified,
  DivisionInexact,
  UnexpectedSupport,
  BadParameter,
  TableInconsistent,
  NonIntegerMultiplicity,
  CharacteristicDividesOrder,
  Overflow,
  BadInput,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Budget errors are the ones caused by a finite cap, not by bad input.
  bool is_budget() const noexcept {
    return code_ == Errc::BallTooLarge || code_ == Errc::SupportEscapesBall;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace langdual
