#pragma once

#include "dlab/grid.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;

enum class Repr { Physical, Spectral };

// Complex-valued function sampled on a Grid1D, in physical or spectral
// representation. Fourier convention:
//   fhat(xi)  = integral f(x) exp(-i xi x) dx      -> dx-weighted DFT
//   f(x)      = (2 pi)^-1 integral fhat exp(i xi x) dxi
// so the discrete Plancherel identity reads
//   sum |f(x_j)|^2 dx = (2 pi)^-1 sum |fhat(xi_k)|^2 dxi.
class Field {
  public:
    Field() = default;
    Field(GridPtr grid, std::vector<cplx> values, Repr repr);

    // Sample a callable on the grid (physical representation).
    static Field sample(GridPtr grid, const std::function<double(double)>& f);
    static Field sample_complex(GridPtr grid, const std::function<cplx(double)>& f);
    static Field zero(GridPtr grid, Repr repr = Repr::Physical);

    const Grid1D& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    Repr repr() const { return repr_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    int n() const { return grid_->n(); }

    Field to_spectral() const;
    Field to_physical() const;
    Field to(Repr r) const { return r == Repr::Spectral ? to_spectral() : to_physical(); }

    // Discrete L2 norm under the convention above; representation-independent.
    double l2_norm() const;
    // integral f dx (the xi = 0 spectral coefficient).
    cplx mass() const;
    double max_abs() const;
    double max_imag_abs() const;

    // Largest |fhat| among modes with |xi| >= frac * ximax, relative to the
    // spectral peak. Used as the resolution check.
    double spectral_tail_ratio(double frac = 0.85) const;
    // max_k |fhat(-xi_k) - conj(fhat(xi_k))| over paired modes.
    double hermitian_error() const;

    // Trigonometric interpolation at an arbitrary point (physical value).
    cplx eval(double x) const;

    // f(. + r) via the spectral shift exp(i xi r); the unpaired Nyquist mode
    // picks up cos(xi_N r) to keep real data real.
    Field translate(double r) const;

    Field operator+(const Field& other) const;
    Field operator-(const Field& other) const;
    Field operator*(double a) const;
    Field& operator+=(const Field& other);
    Field& operator*=(double a);

  private:
    void require_same_grid(const Field& other) const;

    GridPtr grid_;
    std::vector<cplx> values_;
    Repr repr_ = Repr::Physical;
};

// Standalone transform entry points.
Field forward_transform(const Field& f);
Field inverse_transform(const Field& f);

} // namespace dlab
