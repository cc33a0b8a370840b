#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperalg {

// Axiom failures are reported as Violation values, never as exceptions.
// Exceptions are reserved for unusable inputs and blown resource caps.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An element fed to an operation does not belong to the declared carrier,
// or an argument combination is structurally invalid (sizes, missing maps).
struct DomainError : Error {
    using Error::Error;
};

// A structure is self-inconsistent: empty hyperoperation cell, rule result
// escaping a finite carrier, table row missing.
struct MalformedStructureError : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold for the given input.
struct PreconditionError : Error {
    using Error::Error;
};

// A combinatorial cap (enumeration budget, universe size, census order) was hit.
struct BudgetError : Error {
    using Error::Error;
};

// Orthogonalization ran out of usable candidates.
struct DependentInputError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line = 0;
    std::size_t column = 0;
    ParseError(std::size_t line_, std::size_t column_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(column_) + ": " + what_),
          line(line_), column(column_) {}
};

} // namespace hyperalg
