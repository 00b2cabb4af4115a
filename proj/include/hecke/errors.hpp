#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Every failure carries a machine-readable reason, which the CLI forwards
// verbatim in its JSON error payload.
class Error : public std::runtime_error {
public:
    Error(std::string reason, const std::string& what)
        : std::runtime_error(what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

#define HECKE_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    };

HECKE_DEFINE_ERROR(InvalidParameter)
HECKE_DEFINE_ERROR(DivisionByZero)
HECKE_DEFINE_ERROR(InsufficientPrecision)
HECKE_DEFINE_ERROR(CheckFailed)
HECKE_DEFINE_ERROR(TopExceedsLevel)
HECKE_DEFINE_ERROR(ConstructionFailed)
HECKE_DEFINE_ERROR(BudgetExhausted)

#undef HECKE_DEFINE_ERROR

} // namespace hecke
