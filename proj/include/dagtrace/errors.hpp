#pragma once

#include <stdexcept>
#include <string>

namespace dagtrace {

// Malformed input: bad DAG structure, bad builder parameters, bad files.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened or read/written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested sink is unreachable: the optimal value is bottom, so no
// witness path exists. Distinct from range/validation errors.
class NoWitnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A run-time invariant of the engine failed (value decomposition, buffer
// bound, ...). Always an implementation bug, never a user error.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dagtrace
