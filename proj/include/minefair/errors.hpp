#pragma once

#include <stdexcept>
#include <string>

namespace minefair {

// Invalid or inconsistent experiment input. The message names the offending
// field or value.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative computation failed to reach its tolerance within its cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace minefair
