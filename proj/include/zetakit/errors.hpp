#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace zetakit {

/// Exit-code families used by the CLI: input errors map to exit code 2,
/// resource/budget errors to exit code 3, everything else to 1.
enum class ErrorCategory { Input, Budget, Computation };

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message,
          ErrorCategory category = ErrorCategory::Computation)
        : std::runtime_error(message), kind_(std::move(kind)), category_(category) {}

    const std::string& kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string kind_;
    ErrorCategory category_;
};

// finite fields

struct NotPrimeError : Error {
    explicit NotPrimeError(const std::string& m) : Error("NotPrime", m, ErrorCategory::Input) {}
};

struct FieldTooLargeError : Error {
    explicit FieldTooLargeError(const std::string& m) : Error("FieldTooLarge", m, ErrorCategory::Budget) {}
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& m) : Error("DivisionByZero", m) {}
};

struct FieldMismatchError : Error {
    explicit FieldMismatchError(const std::string& m) : Error("FieldMismatch", m, ErrorCategory::Input) {}
};

// polynomials and varieties

struct SyntaxError : Error {
    SyntaxError(const std::string& m, std::size_t position)
        : Error("SyntaxError", m + " (at position " + std::to_string(position) + ")",
                ErrorCategory::Input),
          position(position) {}
    std::size_t position;
};

struct UnknownVariableError : Error {
    explicit UnknownVariableError(const std::string& m)
        : Error("UnknownVariable", m, ErrorCategory::Input) {}
};

struct NegativeExponentError : Error {
    explicit NegativeExponentError(const std::string& m)
        : Error("NegativeExponent", m, ErrorCategory::Input) {}
};

struct NotHomogeneousError : Error {
    explicit NotHomogeneousError(const std::string& m)
        : Error("NotHomogeneous", m, ErrorCategory::Input) {}
};

struct TimedOutError : Error {
    TimedOutError(const std::string& m, unsigned k_reached)
        : Error("TimedOut", m, ErrorCategory::Budget), k_reached(k_reached) {}
    unsigned k_reached;
};

struct NotApplicableError : Error {
    explicit NotApplicableError(const std::string& m) : Error("NotApplicable", m) {}
};

// zeta fitting

struct InsufficientTermsError : Error {
    explicit InsufficientTermsError(const std::string& m) : Error("InsufficientTerms", m) {}
};

struct InconsistentSequenceError : Error {
    explicit InconsistentSequenceError(const std::string& m) : Error("InconsistentSequence", m) {}
};

struct NonIntegerWeightsError : Error {
    explicit NonIntegerWeightsError(const std::string& m) : Error("NonIntegerWeights", m) {}
};

struct WeightAmbiguousError : Error {
    explicit WeightAmbiguousError(const std::string& m) : Error("WeightAmbiguous", m) {}
};

struct MixedSignsError : Error {
    explicit MixedSignsError(const std::string& m) : Error("MixedSigns", m) {}
};

struct MismatchedFieldsError : Error {
    explicit MismatchedFieldsError(const std::string& m)
        : Error("MismatchedFields", m, ErrorCategory::Input) {}
};

// birational bookkeeping

struct DivisorSetMismatchError : Error {
    explicit DivisorSetMismatchError(const std::string& m)
        : Error("DivisorSetMismatch", m, ErrorCategory::Input) {}
};

struct NotMultipleError : Error {
    explicit NotMultipleError(const std::string& m)
        : Error("NotMultiple", m, ErrorCategory::Input) {}
};

// exact extension arithmetic

struct NotLogTerminalError : Error {
    explicit NotLogTerminalError(const std::string& m) : Error("NotLogTerminal", m) {}
};

struct ZeroDivisorError : Error {
    explicit ZeroDivisorError(const std::string& m) : Error("ZeroDivisor", m) {}
};

struct PrecisionExceededError : Error {
    explicit PrecisionExceededError(const std::string& m) : Error("PrecisionExceeded", m) {}
};

struct ExtensionMismatchError : Error {
    explicit ExtensionMismatchError(const std::string& m)
        : Error("ExtensionMismatch", m, ErrorCategory::Input) {}
};

// gallery

struct UnknownEntryError : Error {
    explicit UnknownEntryError(const std::string& m)
        : Error("UnknownEntry", m, ErrorCategory::Input) {}
};

struct BadFileError : Error {
    explicit BadFileError(const std::string& m) : Error("BadFile", m, ErrorCategory::Input) {}
};

}  // namespace zetakit
