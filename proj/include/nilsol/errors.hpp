#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilsol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NILSOL_ERROR(Name)                  \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

NILSOL_ERROR(UnsupportedSystem);
NILSOL_ERROR(ProportionalRoots);
NILSOL_ERROR(MultiplicitiesUnset);
NILSOL_ERROR(DimensionError);
NILSOL_ERROR(DegenerateMetric);
NILSOL_ERROR(UnsupportedRealForm);
NILSOL_ERROR(MaximalityFailure);
NILSOL_ERROR(ConstructionError);
NILSOL_ERROR(NumericalDegeneracy);
NILSOL_ERROR(StructureMismatch);
NILSOL_ERROR(InvalidSpec);
NILSOL_ERROR(DegenerateDimension);
NILSOL_ERROR(NotTangent);
NILSOL_ERROR(CrossCheckFailure);

#undef NILSOL_ERROR

// Bracket of basis vectors i and j leaves the span.
class NotASubalgebra : public Error {
 public:
  NotASubalgebra(std::size_t i, std::size_t j)
      : Error("NotASubalgebra: bracket of basis vectors " + std::to_string(i) + " and " +
              std::to_string(j) + " leaves the span"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

}  // namespace nilsol
