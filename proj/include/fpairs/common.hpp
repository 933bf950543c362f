#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpairs {

using cplx = std::complex<double>;

// Error taxonomy. Everything derived from Error maps to CLI exit code 2
// (bad parameters, violated preconditions, unusable configuration).
// Verification failures are reported through report objects, not exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParameterError : public Error { public: using Error::Error; };
class RangeError : public Error { public: using Error::Error; };
class AliasingError : public Error { public: using Error::Error; };
class InsufficientDataError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class ConditioningError : public Error { public: using Error::Error; };
class DegenerateFrameError : public Error { public: using Error::Error; };
class DivergenceError : public Error { public: using Error::Error; };
class KSmoothError : public Error { public: using Error::Error; };
class TruncationError : public Error { public: using Error::Error; };
class ConstructionError : public Error { public: using Error::Error; };

/// Pairwise summation. Fixed association order, independent of call site,
/// so quadrature values are bit-stable.
template <typename T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}
inline cplx pairwise_sum(const std::vector<cplx>& v) {
    return pairwise_sum(std::span<const cplx>(v));
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

} // namespace fpairs
