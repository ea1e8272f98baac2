#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mds22 {

enum class Errc {
    NotPrime,
    NotIrreducible,
    FieldTooLarge,
    DivisionByZero,
    FieldMismatch,
    EvenCharacteristic,
    ZeroInput,
    NotSquare,
    Singular,
    ParseError,
    ShapeError,
    IndexOutOfRange,
    NotMds,
    OracleDisagreement,
    OutOfRange,
    ExtensionUnavailable,
    WrongResidue,
    UnsupportedQ,
    Unconstructible,
    NotFound,
    InvalidArgument,
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    // Set only for Unconstructible: the formula optimum the caller asked for.
    std::optional<int> formula_value;

private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace mds22
