#pragma once

#include <stdexcept>
#include <string>

namespace rla {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bracket or p-th power of a basis pair escapes the span.
struct ClosureError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct MixedAlgebraError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct NotIdealError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct NotPIdealError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct TorusError : AlgebraError {
    using AlgebraError::AlgebraError;
};
struct NotToralError : TorusError {
    using TorusError::TorusError;
};
struct NotCommutingError : TorusError {
    using TorusError::TorusError;
};
struct DependentTorusError : TorusError {
    using TorusError::TorusError;
};

struct NotSemisimpleActionError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct TooLargeError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct PullbackError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct ModuleError : AlgebraError {
    using AlgebraError::AlgebraError;
};
struct BracketMismatchError : ModuleError {
    using ModuleError::ModuleError;
};
struct PPowerMismatchError : ModuleError {
    using ModuleError::ModuleError;
};

// A simplicity / composition question could not be settled within the
// certified search bounds; never silently treated as "simple".
struct InconclusiveError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct PreconditionUnverifiableError : AlgebraError {
    using AlgebraError::AlgebraError;
};

}  // namespace rla
