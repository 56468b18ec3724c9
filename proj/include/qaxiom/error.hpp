#pragma once

#include <stdexcept>
#include <string>

namespace qaxiom {

// Every failure raised by the library derives from Error; kind() is the
// stable machine-readable name that the CLI puts in its JSON output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QAXIOM_ERROR(Name)                                              \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  }

QAXIOM_ERROR(UnknownGenerator);
QAXIOM_ERROR(UnknownSymbol);
QAXIOM_ERROR(NotCentral);
QAXIOM_ERROR(DuplicatePair);
QAXIOM_ERROR(InvalidAlgebra);
QAXIOM_ERROR(NonLinearSubstitution);
QAXIOM_ERROR(MissingDimension);
QAXIOM_ERROR(NotInvertible);
QAXIOM_ERROR(MissingParam);
QAXIOM_ERROR(InvalidTruncation);
QAXIOM_ERROR(InvalidGrid);
QAXIOM_ERROR(NonHermitian);
QAXIOM_ERROR(TruncationTooSmall);
QAXIOM_ERROR(UnnormalizedState);
QAXIOM_ERROR(NonHermitianObservable);
QAXIOM_ERROR(InvalidParam);
QAXIOM_ERROR(InvalidState);
QAXIOM_ERROR(OpenPath);
QAXIOM_ERROR(InvalidPath);
QAXIOM_ERROR(NonPositiveQuantum);
QAXIOM_ERROR(UsageError);

#undef QAXIOM_ERROR

}  // namespace qaxiom
