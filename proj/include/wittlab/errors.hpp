#pragma once

#include <stdexcept>
#include <string>

namespace wittlab {

struct invalid_descriptor : std::runtime_error {
    explicit invalid_descriptor(const std::string& m) : std::runtime_error("InvalidDescriptor: " + m) {}
};

struct not_divisible : std::runtime_error {
    explicit not_divisible(const std::string& m = "") : std::runtime_error("NotDivisible" + (m.empty() ? "" : ": " + m)) {}
};

struct ambiguous_quotient : std::runtime_error {
    explicit ambiguous_quotient(const std::string& m = "") : std::runtime_error("AmbiguousQuotient" + (m.empty() ? "" : ": " + m)) {}
};

struct not_finite : std::runtime_error {
    explicit not_finite(const std::string& m = "") : std::runtime_error("NotFinite" + (m.empty() ? "" : ": " + m)) {}
};

struct no_lift_declared : std::runtime_error {
    explicit no_lift_declared(const std::string& m = "") : std::runtime_error("NoLiftDeclared" + (m.empty() ? "" : ": " + m)) {}
};

struct not_integral : std::runtime_error {
    explicit not_integral(const std::string& m = "") : std::runtime_error("NotIntegral" + (m.empty() ? "" : ": " + m)) {}
};

struct length_mismatch : std::runtime_error {
    explicit length_mismatch(const std::string& m = "") : std::runtime_error("LengthMismatch" + (m.empty() ? "" : ": " + m)) {}
};

struct ring_mismatch : std::runtime_error {
    explicit ring_mismatch(const std::string& m = "") : std::runtime_error("RingMismatch" + (m.empty() ? "" : ": " + m)) {}
};

struct bad_constant_term : std::runtime_error {
    explicit bad_constant_term(const std::string& m = "") : std::runtime_error("BadConstantTerm" + (m.empty() ? "" : ": " + m)) {}
};

struct non_rational_coefficients : std::runtime_error {
    explicit non_rational_coefficients(const std::string& m = "") : std::runtime_error("NonRationalCoefficients" + (m.empty() ? "" : ": " + m)) {}
};

// Would falsify a cited integrality theorem; must surface loudly.
struct integrality_violation : std::runtime_error {
    explicit integrality_violation(const std::string& m) : std::runtime_error("IntegralityViolation: " + m) {}
};

struct closed_form_mismatch : std::runtime_error {
    explicit closed_form_mismatch(const std::string& m) : std::runtime_error("MismatchWithClosedForm: " + m) {}
};

struct cache_corrupt : std::runtime_error {
    explicit cache_corrupt(const std::string& m) : std::runtime_error("CorruptCache: " + m) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& m) : std::runtime_error("ConfigError: " + m) {}
};

}  // namespace wittlab
