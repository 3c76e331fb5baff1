#pragma once

#include <stdexcept>
#include <string>

namespace defkernel {

// Base class for all engine-raised errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries a 1-based source position.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(std::string msg, int line_, int col_)
        : Error(std::move(msg)), line(line_), column(col_) {}
};

// An exhaustive check or search exceeded its configured budget. Callers may
// fall back to declared-order constructions when they catch this.
struct BudgetError : Error {
    using Error::Error;
};

// A requested operation was given arguments violating its precondition
// (unknown atom, non-derivable step, missing order block, ...).
struct InputError : Error {
    using Error::Error;
};

} // namespace defkernel
