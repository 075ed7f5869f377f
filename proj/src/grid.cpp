#include "dlab/grid.hpp"

#include "dlab/errors.hpp"

#include <numbers>

namespace dlab {

Grid1D::Grid1D(int n_points, double length)
    : n_(n_points), length_(length), dx_(length / n_points),
      dxi_(2.0 * std::numbers::pi / length), freqs_(static_cast<size_t>(n_points)) {
    for (int m = 0; m < n_; ++m) {
        int k = (m < n_ / 2) ? m : m - n_;
        freqs_[static_cast<size_t>(m)] = dxi_ * k;
    }
}

std::shared_ptr<const Grid1D> Grid1D::make(int n_points, double length) {
    if (n_points < 8 || n_points % 2 != 0)
        throw BadParams("Grid1D: n_points must be even and >= 8");
    if (!(length > 0.0))
        throw BadParams("Grid1D: length must be positive");
    return std::shared_ptr<const Grid1D>(new Grid1D(n_points, length));
}

} // namespace dlab
