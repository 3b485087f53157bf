#pragma once

#include <stdexcept>

namespace portgnn {

// Base class for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidNode : Error { using Error::Error; };
struct InvalidEdge : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NoWeakColoring : Error { using Error::Error; };
struct InvalidColoring : Error { using Error::Error; };
struct IsolatedNode : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct AlphabetViolation : Error { using Error::Error; };
struct NotAStar : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct Undefined : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace portgnn
