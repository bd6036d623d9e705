#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace asymsched {

// Every rejected precondition gets its own exception type so callers and
// tests can catch precisely; what() carries the witness.
struct SchedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleDetected : SchedError {
    std::vector<int> cycle;  // one offending cycle, in edge order
    CycleDetected(const std::string& msg, std::vector<int> c)
        : SchedError(msg), cycle(std::move(c)) {}
};

struct InvalidTaskId : SchedError {
    using SchedError::SchedError;
};
struct InvalidChainSet : SchedError {
    using SchedError::SchedError;
};
struct NotTwoSpeed : SchedError {
    using SchedError::SchedError;
};
struct NotSingleFast : SchedError {
    using SchedError::SchedError;
};
struct NotEnoughChains : SchedError {
    using SchedError::SchedError;
};
struct NonIntegerSpeed : SchedError {
    using SchedError::SchedError;
};
struct CrossChainEdges : SchedError {
    using SchedError::SchedError;
};
struct NotChains : SchedError {
    using SchedError::SchedError;
};
struct NoSlowMachines : SchedError {
    using SchedError::SchedError;
};
struct NonRepresentablePower : SchedError {
    using SchedError::SchedError;
};
struct SizeLimitExceeded : SchedError {
    using SchedError::SchedError;
};
struct LpInfeasible : SchedError {
    using SchedError::SchedError;
};
struct AverageSpeedMismatch : SchedError {
    using SchedError::SchedError;
};
struct MachineCountMismatch : SchedError {
    using SchedError::SchedError;
};
struct InvalidSpec : SchedError {
    using SchedError::SchedError;
};
struct ParseError : SchedError {
    using SchedError::SchedError;
};

}  // namespace asymsched
