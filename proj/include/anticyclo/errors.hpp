#pragma once

#include <stdexcept>
#include <string>

namespace anticyclo {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ANTICYCLO_ERROR(Name)                                        \
    struct Name : Error {                                            \
        explicit Name(const std::string& msg = #Name) : Error(msg) {} \
    }

ANTICYCLO_ERROR(PrecisionExhausted);
ANTICYCLO_ERROR(DivisionByZero);
ANTICYCLO_ERROR(NotOrdinary);
ANTICYCLO_ERROR(PrimeMismatch);
ANTICYCLO_ERROR(LevelMismatch);
ANTICYCLO_ERROR(OddPrimeOnly);
ANTICYCLO_ERROR(OutOfRange);
ANTICYCLO_ERROR(InsufficientTruncation);
ANTICYCLO_ERROR(OrderTooSmall);
ANTICYCLO_ERROR(NotAlternating);
ANTICYCLO_ERROR(OddDimension);
ANTICYCLO_ERROR(NotSquare);
ANTICYCLO_ERROR(BadReduction);
ANTICYCLO_ERROR(AnomalousPrime);
ANTICYCLO_ERROR(ZeroLogarithm);
ANTICYCLO_ERROR(InconsistentDimensions);
ANTICYCLO_ERROR(NotSymmetric);
ANTICYCLO_ERROR(FiltrationIncomplete);
ANTICYCLO_ERROR(BlockNotIsotropic);
ANTICYCLO_ERROR(EqualRanks);
ANTICYCLO_ERROR(RelationViolated);
ANTICYCLO_ERROR(NonUnit_uK);
ANTICYCLO_ERROR(ActionMismatch);
ANTICYCLO_ERROR(NotInvariant);
ANTICYCLO_ERROR(NotSolvable);
ANTICYCLO_ERROR(NonUnitFactors);
ANTICYCLO_ERROR(BadDiscriminant);
ANTICYCLO_ERROR(BadInput);

#undef ANTICYCLO_ERROR

} // namespace anticyclo
