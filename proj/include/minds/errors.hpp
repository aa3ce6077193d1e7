#pragma once

#include <stdexcept>
#include <string>

namespace minds {

// A value fell outside its domain (a CF or rate outside [0,1], a grid of 1 point, ...).
class RangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition (duplicate owners, H1 with no documents, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Scenario-level inconsistency: unknown user or keyword, malformed scenario file.
// The message names the offending field where one exists.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A corpus event referenced a document id that does not exist.
class EventReferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace minds
