#include "leo/error.hpp"

namespace leo {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ClosureTooLarge: return "ClosureTooLarge";
        case Errc::UnsupportedParameter: return "UnsupportedParameter";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NotACover: return "NotACover";
        case Errc::ProductsNotSubgroups: return "ProductsNotSubgroups";
        case Errc::KernelConditionFails: return "KernelConditionFails";
        case Errc::GroupCyclic: return "GroupCyclic";
        case Errc::IncompleteFamily: return "IncompleteFamily";
        case Errc::RelationInvalid: return "RelationInvalid";
        case Errc::GeneralisedNotConvertible: return "GeneralisedNotConvertible";
        case Errc::NoAdmissiblePrime: return "NoAdmissiblePrime";
        case Errc::ValidationFailed: return "ValidationFailed";
        case Errc::ParityError: return "ParityError";
        case Errc::BaseNotSupported: return "BaseNotSupported";
        case Errc::GroupAbelian: return "GroupAbelian";
        case Errc::NoReductionAvailable: return "NoReductionAvailable";
        case Errc::NotAUnit: return "NotAUnit";
        case Errc::NotPMaximal: return "NotPMaximal";
        case Errc::FiltrationInvariantBroken: return "FiltrationInvariantBroken";
        case Errc::RankMismatch: return "RankMismatch";
        case Errc::OrderSearchExceeded: return "OrderSearchExceeded";
        case Errc::DiscriminantObstruction: return "DiscriminantObstruction";
        case Errc::CertificateInsufficient: return "CertificateInsufficient";
        case Errc::PolynomialIsSquare: return "PolynomialIsSquare";
        case Errc::NotEnoughFound: return "NotEnoughFound";
        case Errc::UnknownPreset: return "UnknownPreset";
        case Errc::ReducibleSpecialization: return "ReducibleSpecialization";
        case Errc::GaloisTypeMismatch: return "GaloisTypeMismatch";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::MissingAnchor: return "MissingAnchor";
        case Errc::ParseError: return "ParseError";
        case Errc::ConditionDisagreement: return "ConditionDisagreement";
        case Errc::EmptyFeasibleSet: return "EmptyFeasibleSet";
    }
    return "Unknown";
}

}  // namespace leo
