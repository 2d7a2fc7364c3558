#pragma once

#include <stdexcept>
#include <string>

namespace apricot {

// Base for all domain errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownObjectError : Error {
    explicit UnknownObjectError(const std::string& name)
        : Error("unknown object: " + name) {}
};

struct MalformedRequirementError : Error {
    using Error::Error;
};

struct CollisionError : Error {
    using Error::Error;
};

struct UncoveredCategoryError : Error {
    using Error::Error;
};

struct IdenticalPreferenceError : Error {
    IdenticalPreferenceError() : Error("cannot generate questions for identical preferences") {}
};

struct EmptyQuestionSetError : Error {
    EmptyQuestionSetError() : Error("question pool is empty") {}
};

struct DegeneratePosteriorError : Error {
    DegeneratePosteriorError() : Error("all posterior mass vanished (every candidate contradicted)") {}
};

struct InsufficientCandidatesError : Error {
    explicit InsufficientCandidatesError(int have, int want)
        : Error("only " + std::to_string(have) + " distinct consistent preferences exist, need "
                + std::to_string(want)),
          available(have) {}
    int available;
};

struct IntractableInstanceError : Error {
    explicit IntractableInstanceError(std::size_t taskSize)
        : Error("brute-force oracle limited to 5 objects, got " + std::to_string(taskSize)) {}
};

struct GenerationRetryError : Error {
    using Error::Error;
};

struct MalformedInputError : Error {
    using Error::Error;
};

struct InputAbortError : Error {
    InputAbortError() : Error("interactive input stream closed before termination") {}
};

} // namespace apricot
