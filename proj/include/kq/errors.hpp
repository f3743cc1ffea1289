#pragma once

#include <stdexcept>
#include <string>

namespace kq {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidGroupParameter : Error {
    explicit InvalidGroupParameter(const std::string& msg) : Error(msg) {}
};

struct NoSuchAutomorphism : Error {
    explicit NoSuchAutomorphism(const std::string& msg) : Error(msg) {}
};

struct EmptyIndexSet : Error {
    explicit EmptyIndexSet(const std::string& msg) : Error(msg) {}
};

struct AffineComponent : Error {
    explicit AffineComponent(const std::string& msg) : Error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg) : Error(msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

struct UnsupportedStability : Error {
    explicit UnsupportedStability(const std::string& msg) : Error(msg) {}
};

struct QuiverMismatch : Error {
    explicit QuiverMismatch(const std::string& msg) : Error(msg) {}
};

struct NotCyclic : Error {
    explicit NotCyclic(const std::string& msg) : Error(msg) {}
};

struct RationalizationFailed : Error {
    explicit RationalizationFailed(const std::string& msg) : Error(msg) {}
};

struct PreconditionViolation : Error {
    explicit PreconditionViolation(const std::string& msg) : Error(msg) {}
};

// Resource guards (CLI maps these to exit code 3).
struct ResourceGuard : Error {
    explicit ResourceGuard(const std::string& msg) : Error(msg) {}
};

struct DimensionTooLarge : ResourceGuard {
    explicit DimensionTooLarge(const std::string& msg) : ResourceGuard(msg) {}
};

struct CapTooLargeForMemory : ResourceGuard {
    explicit CapTooLargeForMemory(const std::string& msg) : ResourceGuard(msg) {}
};

} // namespace kq
