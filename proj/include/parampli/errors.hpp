// errors.hpp: error taxonomy. Invalid user input throws
// std::invalid_argument; a cross-check that two internal routes disagree
// throws InconsistencyError. The CLI maps them to exit codes 2 and 1.
#pragma once

#include <stdexcept>
#include <string>

namespace parampli {

struct InconsistencyError : std::runtime_error {
    explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace parampli
