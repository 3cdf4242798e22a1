#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

// Base of every error the library throws. `code()` is a short machine-readable
// tag used by the CLI reports ("odd_loops", "not_closed", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Word is not a composable (or not a closed) path.
class PathError : public Error {
public:
    using Error::Error;
};

// Bad alphabet declaration, unknown variable, or mixing series over different alphabets.
class AlphabetError : public Error {
public:
    using Error::Error;
};

// Quiver or Ext data violating the classification constraints.
class QuiverError : public Error {
public:
    using Error::Error;
};

// An operation was called on inputs that do not satisfy its mathematical precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An assembled differential left the selected subcomplex.
class SubcomplexError : public Error {
public:
    using Error::Error;
};

} // namespace necklace
