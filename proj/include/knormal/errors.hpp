#pragma once

#include <stdexcept>
#include <string>

namespace knormal {

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotPrime : std::runtime_error {
    explicit NotPrime(const std::string& what) : std::runtime_error(what) {}
};

struct NotADivisor : std::runtime_error {
    explicit NotADivisor(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroElement : std::runtime_error {
    explicit ZeroElement(const std::string& what) : std::runtime_error(what) {}
};

struct FieldMismatch : std::runtime_error {
    explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct MixedClassification : std::runtime_error {
    explicit MixedClassification(const std::string& what) : std::runtime_error(what) {}
};

struct FixtureError : std::runtime_error {
    explicit FixtureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace knormal
