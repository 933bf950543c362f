#pragma once

#include <vector>

#include "fpairs/common.hpp"

namespace fpairs {

/// Symmetric uniform grid for paired space/frequency sampling.
/// x_k = -X + k dx (k = 0..N-1), xi_m = -Xi + m dxi, with
/// dx = 2X/N, dxi = 1/(2X), Xi = N/(4X), so dx * dxi * N = 1 exactly.
struct Grid {
    double half_width = 0.0;   // X
    int size = 0;              // N, power of two >= 8
    double dx = 0.0;
    double dxi = 0.0;
    double xi_half_width = 0.0; // Xi

    static Grid make(double half_width, int size);

    double x(int k) const { return -half_width + dx * k; }
    double xi(int m) const { return -xi_half_width + dxi * m; }
    std::vector<double> x_points() const;
    std::vector<double> xi_points() const;

    bool operator==(const Grid& o) const {
        return half_width == o.half_width && size == o.size;
    }
};

/// Paired space/frequency samples of a function. `consistent` means the two
/// sides are transforms of each other (produced by fourier_transform or
/// inverse_transform).
class GridFunction {
public:
    GridFunction() = default;

    static GridFunction from_space(const Grid& g, std::vector<cplx> space_values);
    static GridFunction from_freq(const Grid& g, std::vector<cplx> freq_values);
    static GridFunction from_both(const Grid& g, std::vector<cplx> space_values,
                                  std::vector<cplx> freq_values);

    const Grid& grid() const { return grid_; }
    bool has_space() const { return !space_.empty(); }
    bool has_freq() const { return !freq_.empty(); }
    bool consistent() const { return consistent_; }

    const std::vector<cplx>& space() const;
    const std::vector<cplx>& freq() const;

    GridFunction scaled(cplx factor) const;
    GridFunction plus(const GridFunction& other) const;

private:
    Grid grid_;
    std::vector<cplx> space_;
    std::vector<cplx> freq_;
    bool consistent_ = false;

    friend GridFunction fourier_transform(const GridFunction&, double);
    friend GridFunction inverse_transform(const GridFunction&, double);
};

} // namespace fpairs
