#include "fpairs/grid.hpp"

#include <cmath>

namespace fpairs {

Grid Grid::make(double half_width, int size) {
    if (!(half_width > 0.0))
        throw ParameterError("Grid: half_width must be positive");
    if (size < 8 || (size & (size - 1)) != 0)
        throw ParameterError("Grid: size must be a power of two >= 8");
    Grid g;
    g.half_width = half_width;
    g.size = size;
    g.dx = 2.0 * half_width / size;
    g.dxi = 1.0 / (2.0 * half_width);
    g.xi_half_width = size / (4.0 * half_width);
    return g;
}

std::vector<double> Grid::x_points() const {
    std::vector<double> v(size);
    for (int k = 0; k < size; ++k) v[k] = x(k);
    return v;
}

std::vector<double> Grid::xi_points() const {
    std::vector<double> v(size);
    for (int m = 0; m < size; ++m) v[m] = xi(m);
    return v;
}

GridFunction GridFunction::from_space(const Grid& g, std::vector<cplx> space_values) {
    if (static_cast<int>(space_values.size()) != g.size)
        throw ParameterError("GridFunction: space sample count does not match grid");
    GridFunction f;
    f.grid_ = g;
    f.space_ = std::move(space_values);
    return f;
}

GridFunction GridFunction::from_freq(const Grid& g, std::vector<cplx> freq_values) {
    if (static_cast<int>(freq_values.size()) != g.size)
        throw ParameterError("GridFunction: frequency sample count does not match grid");
    GridFunction f;
    f.grid_ = g;
    f.freq_ = std::move(freq_values);
    return f;
}

GridFunction GridFunction::from_both(const Grid& g, std::vector<cplx> space_values,
                                     std::vector<cplx> freq_values) {
    if (static_cast<int>(space_values.size()) != g.size ||
        static_cast<int>(freq_values.size()) != g.size)
        throw ParameterError("GridFunction: sample count does not match grid");
    GridFunction f;
    f.grid_ = g;
    f.space_ = std::move(space_values);
    f.freq_ = std::move(freq_values);
    f.consistent_ = true;
    return f;
}

const std::vector<cplx>& GridFunction::space() const {
    if (space_.empty()) throw ParameterError("GridFunction: space side not populated");
    return space_;
}

const std::vector<cplx>& GridFunction::freq() const {
    if (freq_.empty()) throw ParameterError("GridFunction: frequency side not populated");
    return freq_;
}

GridFunction GridFunction::scaled(cplx factor) const {
    GridFunction f(*this);
    for (auto& v : f.space_) v *= factor;
    for (auto& v : f.freq_) v *= factor;
    return f;
}

GridFunction GridFunction::plus(const GridFunction& other) const {
    if (!(grid_ == other.grid_))
        throw ParameterError("GridFunction: grid mismatch in addition");
    GridFunction f(*this);
    if (!f.space_.empty() && !other.space_.empty())
        for (int k = 0; k < grid_.size; ++k) f.space_[k] += other.space_[k];
    else
        f.space_.clear();
    if (!f.freq_.empty() && !other.freq_.empty())
        for (int k = 0; k < grid_.size; ++k) f.freq_[k] += other.freq_[k];
    else
        f.freq_.clear();
    f.consistent_ = consistent_ && other.consistent_;
    return f;
}

} // namespace fpairs
