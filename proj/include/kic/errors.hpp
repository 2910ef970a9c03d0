#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kic {

enum class ErrorCode {
    newick_syntax,        // malformed Newick input
    duplicate_label,      // repeated leaf label
    non_binary,           // a node would have unrooted degree other than 1 or 3
    invalid_tree,         // structural invariant violation (connectivity, leaf count, ...)
    bad_association,      // association is not a bijection or does not cover the label sets
    bad_parameter,        // argument outside an operation's documented range
    cap_exceeded,         // enumeration size above the configured cap
    budget_exhausted,     // bounded search ran out of node budget
    claim_failed,         // a verified claim did not hold
};

class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorCode code, const std::string& message, std::size_t position = npos)
        : std::runtime_error(message), code_(code), position_(position) {}

    ErrorCode code() const noexcept { return code_; }

    // Byte offset into the input for parse errors, npos otherwise.
    std::size_t position() const noexcept { return position_; }

private:
    ErrorCode code_;
    std::size_t position_;
};

}  // namespace kic
