#ifndef SPLITROOTS_ERRORS_HPP
#define SPLITROOTS_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace splitroots {

// Bad caller input (non-prime modulus, a outside [0,1), bad index, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotFullySplit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RamifiedPrime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorruptCache : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The cached scan does not reach the prime the caller asked about.
class NeedsScan : public std::runtime_error {
public:
    NeedsScan(std::uint64_t required_upto, const std::string& what)
        : std::runtime_error(what), required_upto_(required_upto) {}
    std::uint64_t required_upto() const noexcept { return required_upto_; }

private:
    std::uint64_t required_upto_;
};

// Polynomial expression errors.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

class NotMonic : public ParseError {
public:
    using ParseError::ParseError;
};

class DegreeTooSmall : public ParseError {
public:
    using ParseError::ParseError;
};

class CoefficientOverflow : public ParseError {
public:
    using ParseError::ParseError;
};

class SyntaxError : public ParseError {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : ParseError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace splitroots

#endif
