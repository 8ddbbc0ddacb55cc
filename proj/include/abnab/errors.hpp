#ifndef ABNAB_ERRORS_HPP
#define ABNAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abnab {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// A denominator linear form evaluated to the zero polynomial in z.
struct PoleAtSpecialization : Error {
    explicit PoleAtSpecialization(const std::string& m) : Error(m) {}
};

struct ZeroScale : Error {
    explicit ZeroScale(const std::string& m) : Error(m) {}
};

struct SizeLimitExceeded : Error {
    explicit SizeLimitExceeded(const std::string& m) : Error(m) {}
};

struct MalformedPresentation : Error {
    explicit MalformedPresentation(const std::string& m) : Error(m) {}
};

struct UnboundedFiber : Error {
    explicit UnboundedFiber(const std::string& m) : Error(m) {}
};

struct OrbitCapExceeded : Error {
    explicit OrbitCapExceeded(const std::string& m) : Error(m) {}
};

struct NonConvexTwist : Error {
    explicit NonConvexTwist(const std::string& m) : Error(m) {}
};

struct NotFano : Error {
    explicit NotFano(const std::string& m) : Error(m) {}
};

struct InvalidFamilyParams : Error {
    explicit InvalidFamilyParams(const std::string& m) : Error(m) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& m) : Error(m) {}
};

} // namespace abnab

#endif
