#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace interprime {

/// Invalid input or a mathematical precondition that does not hold.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& message, std::size_t position)
        : DomainError(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// The polynomial has no root in Z_p, so no affine normalisation at p exists.
class NoLocalRoot : public DomainError {
public:
    explicit NoLocalRoot(std::uint64_t p)
        : DomainError("NoLocalRoot(" + std::to_string(p) + "): no root in Z_" + std::to_string(p)),
          prime_(p) {}

    std::uint64_t prime() const noexcept { return prime_; }

private:
    std::uint64_t prime_;
};

/// A division that must be exact was not. Always an internal bug.
class InexactDivision : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace interprime
