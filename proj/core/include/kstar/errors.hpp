#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kstar {

/// Syntax or structural error in an input file. `line` is 1-based; 0 means
/// the error concerns the file as a whole.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error(line == 0 ? message
                                       : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A subset search hit its configured cap before finishing.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(std::uint64_t reached)
        : std::runtime_error("subset cap exceeded after storing " +
                             std::to_string(reached) + " subsets"),
          reached_(reached) {}

    std::uint64_t reached() const { return reached_; }

private:
    std::uint64_t reached_;
};

}  // namespace kstar
