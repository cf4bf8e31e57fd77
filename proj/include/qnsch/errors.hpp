#pragma once

#include <stdexcept>
#include <string>

namespace qnsch {

// evaluation of a singular-branch function outside its domain
struct SingularDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// density left the admissible band during a run
struct ConfinementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NaN/Inf detected in the state
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// inputs violate a required algebraic relation
struct ConsistencyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qnsch
