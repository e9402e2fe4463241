#pragma once
#include <stdexcept>
#include <string>

namespace clx {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define CLX_ERROR(Name)                                                        \
    struct Name : Error {                                                      \
        explicit Name(const std::string& w) : Error(#Name, w) {}               \
    }

CLX_ERROR(StabilityError);
CLX_ERROR(EdgeError);
CLX_ERROR(ShapeError);
CLX_ERROR(CapError);
CLX_ERROR(RangeError);
CLX_ERROR(ShuffleError);
CLX_ERROR(GhostCornerError);
CLX_ERROR(OrderError);
CLX_ERROR(DegenerateError);
CLX_ERROR(BalanceError);
CLX_ERROR(BlockError);
CLX_ERROR(ValidationError);
CLX_ERROR(MonotoneError);
CLX_ERROR(SurgeryError);
CLX_ERROR(ParseError);

#undef CLX_ERROR

} // namespace clx
