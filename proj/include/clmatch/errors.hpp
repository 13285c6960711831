#pragma once

#include <stdexcept>
#include <string>

namespace clmatch {

// Bad user input: malformed files, out-of-range parameters, size caps. CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A promise-carrying operation was fed an instance that breaks the promise
// (e.g. extraction under a non-isolating weight assignment). CLI exit code 2.
class PromiseViolation : public std::runtime_error {
public:
    explicit PromiseViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller broke an interface contract (comp without a threshold edge,
// decomp on a slot that was never written, a2 on a roundtripping string).
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Tape state inconsistent with the compression stack discipline.
class TapeCorruption : public std::runtime_error {
public:
    explicit TapeCorruption(const std::string& msg) : std::runtime_error(msg) {}
};

// "Cannot happen" states: violated internal invariants.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace clmatch
