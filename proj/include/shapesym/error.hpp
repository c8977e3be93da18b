#pragma once

#include <stdexcept>
#include <string>

namespace shapesym {

// Domain errors: violated preconditions, undefined transitions, words
// outside the language, incompatible shapes, and so on.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Errors raised while reading one of the text file formats.
struct ParseError : Error {
    using Error::Error;
};

} // namespace shapesym
