#pragma once

#include <stdexcept>
#include <string>

namespace leo {

enum class Errc {
    ClosureTooLarge,
    UnsupportedParameter,
    InvalidArgument,
    NotACover,
    ProductsNotSubgroups,
    KernelConditionFails,
    GroupCyclic,
    IncompleteFamily,
    RelationInvalid,
    GeneralisedNotConvertible,
    NoAdmissiblePrime,
    ValidationFailed,
    ParityError,
    BaseNotSupported,
    GroupAbelian,
    NoReductionAvailable,
    NotAUnit,
    NotPMaximal,
    FiltrationInvariantBroken,
    RankMismatch,
    OrderSearchExceeded,
    DiscriminantObstruction,
    CertificateInsufficient,
    PolynomialIsSquare,
    NotEnoughFound,
    UnknownPreset,
    ReducibleSpecialization,
    GaloisTypeMismatch,
    OutOfDomain,
    MissingAnchor,
    ParseError,
    ConditionDisagreement,
    EmptyFeasibleSet,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace leo
