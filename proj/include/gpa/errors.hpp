#pragma once

#include <stdexcept>
#include <string>

namespace gpa {

enum class ErrorKind {
    NonSymmetrizable,
    BadOrientation,
    BadDiagonal,
    InvalidCartan,
    NotLocallyFreeShape,
    NotFiniteType,
    NotDominant,
    ShapeMismatch,
    NotLocallyFree,
    RelationFailure,
    FieldTooSmall,
    GenericityExhausted,
    KeyCollision,
    HeightInsufficient,
    BudgetExceeded,
    NonPolynomialCount,
    BadReduction,
    DualityCheckFailed,
    PreconditionViolated,
    TorusNotApplicable,
    ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gpa
