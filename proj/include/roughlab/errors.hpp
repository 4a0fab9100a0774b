#pragma once

#include <stdexcept>
#include <string>

namespace roughlab {

struct OutOfGrid : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivergentSeries : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmbeddingNotPSD : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureUnstable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSewable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidRegime : std::domain_error {
  using std::domain_error::domain_error;
};

struct RegimeMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

struct TooFewSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace roughlab
