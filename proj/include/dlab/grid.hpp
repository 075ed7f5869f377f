#pragma once

#include <memory>
#include <vector>

namespace dlab {

// Uniform periodic grid on [-L/2, L/2) with its dual frequency grid.
// Frequencies are stored in transform-native order: index m holds
// xi = 2*pi*k/L with k = m for m < n/2 and k = m - n otherwise, so the
// lone Nyquist mode sits at k = -n/2.
class Grid1D {
  public:
    static std::shared_ptr<const Grid1D> make(int n_points, double length);

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return dx_; }
    double dxi() const { return dxi_; }

    double x(int j) const { return -0.5 * length_ + j * dx_; }
    const std::vector<double>& frequencies() const { return freqs_; }
    double xi(int m) const { return freqs_[static_cast<size_t>(m)]; }

    // Index of the unpaired Nyquist mode (k = -n/2).
    int nyquist_index() const { return n_ / 2; }
    // Index of the grid point at x = 0. Grids always contain the origin.
    int origin_index() const { return n_ / 2; }

    bool same_as(const Grid1D& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

  private:
    Grid1D(int n_points, double length);

    int n_;
    double length_;
    double dx_;
    double dxi_;
    std::vector<double> freqs_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

} // namespace dlab
