// Error types thrown on contract violations. All derive from Error so the
// CLI can map them to the "bad input" exit code in one catch.
#pragma once

#include <stdexcept>
#include <string>

namespace leeyang {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LEEYANG_ERROR(Name)                                   \
  struct Name : Error {                                       \
    explicit Name(const std::string& msg = #Name) : Error(msg) {} \
  }

// polycore
LEEYANG_ERROR(OverlappingSupport);
LEEYANG_ERROR(SameVariable);
LEEYANG_ERROR(LengthMismatch);

// measures
LEEYANG_ERROR(DegenerateMeasure);

// gibbs
LEEYANG_ERROR(TooManySites);
LEEYANG_ERROR(EmptySupport);
LEEYANG_ERROR(NonSpinHalf);
LEEYANG_ERROR(NoCouplings);

// analysis
LEEYANG_ERROR(ZeroPolynomial);
LEEYANG_ERROR(NotHalfPlaneFree);
LEEYANG_ERROR(VanishingInDisk);
LEEYANG_ERROR(PoleAtMinusOne);
LEEYANG_ERROR(NotInRightHalfPlane);
LEEYANG_ERROR(OutsideDisk);

// correlations / ursell
LEEYANG_ERROR(VanishingPartition);
LEEYANG_ERROR(WindowTooSmall);
LEEYANG_ERROR(RangeViolation);

#undef LEEYANG_ERROR

}  // namespace leeyang
