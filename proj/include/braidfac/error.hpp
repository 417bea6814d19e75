#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidfac {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// index outside the ambient rank or strand count
struct RankError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    std::size_t length;
    BudgetError(const std::string& what, std::size_t len) : Error(what), length(len) {}
};

struct PreconditionError : Error {
    std::string witness;
    explicit PreconditionError(const std::string& what, std::string w = {})
        : Error(what), witness(std::move(w)) {}
};

struct ClassError : Error {
    using Error::Error;
};

struct InadmissibleError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int l, int c)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what),
          line(l), column(c) {}
};

}  // namespace braidfac
