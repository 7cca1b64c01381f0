#include "langdual/error.hpp"

namespace langdual {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NonPerfectPairing: return "NonPerfectPairing";
    case Errc::MismatchedGroups: return "MismatchedGroups";
    case Errc::InvalidCharacter: return "InvalidCharacter";
    case Errc::NotSymmetrizable: return "NotSymmetrizable";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::PairingNotPerfect: return "PairingNotPerfect";
    case Errc::DiagonalNotTwo: return "DiagonalNotTwo";
    case Errc::OffDiagonalPositive: return "OffDiagonalPositive";
    case Errc::NonTermination: return "NonTermination";
    case Errc::UnknownType: return "UnknownType";
    case Errc::NotDominant: return "NotDominant";
    case Errc::NotSemisimple: return "NotSemisimple";
    case Errc::NotSimplyConnected: return "NotSimplyConnected";
    case Errc::MixedRootSystems: return "MixedRootSystems";
    case Errc::BallTooLarge: return "BallTooLarge";
    case Errc::SupportEscapesBall: return "SupportEscapesBall";
    case Errc::NotCertified: return "NotCertified";
    case Errc::DivisionInexact: return "DivisionInexact";
    case Errc::UnexpectedSupport: return "UnexpectedSupport";
    case Errc::BadParameter: return "BadParameter";
    case Errc::TableInconsistent: return "TableInconsistent";
    case Errc::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case Errc::CharacteristicDividesOrder: return "CharacteristicDividesOrder";
    case Errc::Overflow: return "Overflow";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace langdual
