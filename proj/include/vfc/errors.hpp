#pragma once

#include <stdexcept>
#include <string>

namespace vfc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define VFC_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

VFC_DEFINE_ERROR(SingularChartPoint)
VFC_DEFINE_ERROR(NonPositiveDefinite)
VFC_DEFINE_ERROR(DegeneratePlane)
VFC_DEFINE_ERROR(SingularFieldPoint)
VFC_DEFINE_ERROR(QuadratureDivergence)
VFC_DEFINE_ERROR(EigenFailure)
VFC_DEFINE_ERROR(RankDeficientImmersion)
VFC_DEFINE_ERROR(NotUnit)
VFC_DEFINE_ERROR(NotKilling)
VFC_DEFINE_ERROR(NotApplicable)
VFC_DEFINE_ERROR(NotRoundSphere)
VFC_DEFINE_ERROR(IvNotComplex)
VFC_DEFINE_ERROR(DimensionUnsupported)
VFC_DEFINE_ERROR(NonPositiveWeight)
VFC_DEFINE_ERROR(BadRadii)
VFC_DEFINE_ERROR(ZeroContent)
VFC_DEFINE_ERROR(ParseError)
VFC_DEFINE_ERROR(IoError)

#undef VFC_DEFINE_ERROR

}  // namespace vfc
