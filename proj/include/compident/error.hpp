#pragma once

#include <stdexcept>
#include <string>

namespace compident {

// Every library failure carries a stable machine-readable code (e.g.
// "InvalidModel") next to the human message; the CLI serializes both.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define COMPIDENT_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

COMPIDENT_DEFINE_ERROR(MalformedSpec);
COMPIDENT_DEFINE_ERROR(InvalidModel);
COMPIDENT_DEFINE_ERROR(NegativeIndexBelowConvention);
COMPIDENT_DEFINE_ERROR(MissingAssignment);
COMPIDENT_DEFINE_ERROR(ParseError);
COMPIDENT_DEFINE_ERROR(NotAnOutput);
COMPIDENT_DEFINE_ERROR(NotAnInput);
COMPIDENT_DEFINE_ERROR(UncoveredVariable);
COMPIDENT_DEFINE_ERROR(NotStronglyConnected);
COMPIDENT_DEFINE_ERROR(ZeroDivisorCoefficient);
COMPIDENT_DEFINE_ERROR(PreconditionViolated);
COMPIDENT_DEFINE_ERROR(NotACycle);
COMPIDENT_DEFINE_ERROR(NotCatenary);
COMPIDENT_DEFINE_ERROR(UndefinedForAdjacentPair);
COMPIDENT_DEFINE_ERROR(NotApplicable);
COMPIDENT_DEFINE_ERROR(NotIdentifiable);
COMPIDENT_DEFINE_ERROR(TooLarge);
COMPIDENT_DEFINE_ERROR(UnsolvableConstraint);
COMPIDENT_DEFINE_ERROR(GcdFailure);
COMPIDENT_DEFINE_ERROR(IoFailure);

#undef COMPIDENT_DEFINE_ERROR

}  // namespace compident
