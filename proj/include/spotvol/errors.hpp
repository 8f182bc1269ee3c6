#pragma once

#include <stdexcept>
#include <string>

namespace spotvol {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SPOTVOL_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(msg) {}       \
    }

SPOTVOL_DEFINE_ERROR(GapTooLarge);
SPOTVOL_DEFINE_ERROR(EndpointMissing);
SPOTVOL_DEFINE_ERROR(DomainError);
SPOTVOL_DEFINE_ERROR(InsufficientData);
SPOTVOL_DEFINE_ERROR(ConstantSeries);
SPOTVOL_DEFINE_ERROR(SingularDesign);
SPOTVOL_DEFINE_ERROR(DegenerateResiduals);
SPOTVOL_DEFINE_ERROR(SpecMismatch);
SPOTVOL_DEFINE_ERROR(VarianceNonPositive);
SPOTVOL_DEFINE_ERROR(NonFinite);
SPOTVOL_DEFINE_ERROR(AlignmentError);
SPOTVOL_DEFINE_ERROR(RangeError);
SPOTVOL_DEFINE_ERROR(ParseError);
SPOTVOL_DEFINE_ERROR(DuplicateDate);

#undef SPOTVOL_DEFINE_ERROR

}  // namespace spotvol
