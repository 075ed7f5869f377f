#include "dlab/field.hpp"

#include "dlab/errors.hpp"
#include "dlab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dlab {

Field::Field(GridPtr grid, std::vector<cplx> values, Repr repr)
    : grid_(std::move(grid)), values_(std::move(values)), repr_(repr) {
    if (values_.size() != static_cast<size_t>(grid_->n()))
        throw BadParams("Field: value count does not match grid");
}

Field Field::sample(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<cplx> v(static_cast<size_t>(grid->n()));
    for (int j = 0; j < grid->n(); ++j) v[static_cast<size_t>(j)] = f(grid->x(j));
    return Field(std::move(grid), std::move(v), Repr::Physical);
}

Field Field::sample_complex(GridPtr grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(static_cast<size_t>(grid->n()));
    for (int j = 0; j < grid->n(); ++j) v[static_cast<size_t>(j)] = f(grid->x(j));
    return Field(std::move(grid), std::move(v), Repr::Physical);
}

Field Field::zero(GridPtr grid, Repr repr) {
    std::vector<cplx> v(static_cast<size_t>(grid->n()), cplx{0.0, 0.0});
    return Field(std::move(grid), std::move(v), repr);
}

// The grid starts at x = -L/2, so the plain DFT acquires the alternating
// phase (-1)^m relative to the convention fhat(xi) = integral f exp(-i xi x).
Field Field::to_spectral() const {
    if (repr_ == Repr::Spectral) return *this;
    const int n = grid_->n();
    std::vector<cplx> out(static_cast<size_t>(n));
    fft::forward(values_.data(), out.data(), n);
    const double dx = grid_->dx();
    for (int m = 0; m < n; ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        out[static_cast<size_t>(m)] *= dx * sign;
    }
    return Field(grid_, std::move(out), Repr::Spectral);
}

Field Field::to_physical() const {
    if (repr_ == Repr::Physical) return *this;
    const int n = grid_->n();
    std::vector<cplx> tmp(static_cast<size_t>(n));
    const double inv_l = 1.0 / grid_->length();
    for (int m = 0; m < n; ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        tmp[static_cast<size_t>(m)] = values_[static_cast<size_t>(m)] * (inv_l * sign);
    }
    std::vector<cplx> out(static_cast<size_t>(n));
    fft::backward(tmp.data(), out.data(), n);
    return Field(grid_, std::move(out), Repr::Physical);
}

double Field::l2_norm() const {
    double s = 0.0;
    if (repr_ == Repr::Physical) {
        for (const cplx& v : values_) s += std::norm(v);
        return std::sqrt(s * grid_->dx());
    }
    for (const cplx& v : values_) s += std::norm(v);
    return std::sqrt(s * grid_->dxi() / (2.0 * std::numbers::pi));
}

cplx Field::mass() const {
    if (repr_ == Repr::Spectral) return values_[0];
    cplx s{0.0, 0.0};
    for (const cplx& v : values_) s += v;
    return s * grid_->dx();
}

double Field::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::max_imag_abs() const {
    double m = 0.0;
    for (const cplx& v : values_) m = std::max(m, std::abs(v.imag()));
    return m;
}

double Field::spectral_tail_ratio(double frac) const {
    Field s = to_spectral();
    const int n = grid_->n();
    const double ximax = std::abs(grid_->xi(grid_->nyquist_index()));
    double peak = 0.0, tail = 0.0;
    for (int m = 0; m < n; ++m) {
        double a = std::abs(s.values()[static_cast<size_t>(m)]);
        peak = std::max(peak, a);
        if (std::abs(grid_->xi(m)) >= frac * ximax) tail = std::max(tail, a);
    }
    return peak > 0.0 ? tail / peak : 0.0;
}

double Field::hermitian_error() const {
    Field s = to_spectral();
    const int n = grid_->n();
    double worst = 0.0;
    for (int k = 1; k < n / 2; ++k) {
        cplx a = s.values()[static_cast<size_t>(k)];
        cplx b = s.values()[static_cast<size_t>(n - k)];
        worst = std::max(worst, std::abs(b - std::conj(a)));
    }
    worst = std::max(worst, std::abs(s.values()[0].imag()));
    return worst;
}

cplx Field::eval(double x) const {
    Field s = to_spectral();
    const int n = grid_->n();
    const int nyq = grid_->nyquist_index();
    cplx acc{0.0, 0.0};
    for (int m = 0; m < n; ++m) {
        if (m == nyq) continue;
        double xi = grid_->xi(m);
        acc += s.values()[static_cast<size_t>(m)] * std::polar(1.0, xi * x);
    }
    // Symmetrized Nyquist basis; reproduces the grid samples and keeps the
    // interpolant real for real data.
    const double xin = grid_->xi(nyq);
    double parity = (nyq % 2 == 0) ? 1.0 : -1.0; // exp(i pi n/2) for even n
    acc += s.values()[static_cast<size_t>(nyq)] * parity *
           std::cos(-xin * (x + 0.5 * grid_->length()));
    return acc / grid_->length();
}

Field Field::translate(double r) const {
    Field s = to_spectral();
    const int n = grid_->n();
    const int nyq = grid_->nyquist_index();
    for (int m = 0; m < n; ++m) {
        double xi = grid_->xi(m);
        if (m == nyq)
            s.values()[static_cast<size_t>(m)] *= std::cos(xi * r);
        else
            s.values()[static_cast<size_t>(m)] *= std::polar(1.0, xi * r);
    }
    return repr_ == Repr::Physical ? s.to_physical() : s;
}

void Field::require_same_grid(const Field& other) const {
    if (!grid_->same_as(other.grid()))
        throw BadParams("Field: operands live on different grids");
}

Field Field::operator+(const Field& other) const {
    require_same_grid(other);
    Field b = other.to(repr_);
    Field out = *this;
    for (size_t i = 0; i < values_.size(); ++i) out.values_[i] += b.values()[i];
    return out;
}

Field Field::operator-(const Field& other) const {
    require_same_grid(other);
    Field b = other.to(repr_);
    Field out = *this;
    for (size_t i = 0; i < values_.size(); ++i) out.values_[i] -= b.values()[i];
    return out;
}

Field Field::operator*(double a) const {
    Field out = *this;
    for (cplx& v : out.values_) v *= a;
    return out;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(other);
    Field b = other.to(repr_);
    for (size_t i = 0; i < values_.size(); ++i) values_[i] += b.values()[i];
    return *this;
}

Field& Field::operator*=(double a) {
    for (cplx& v : values_) v *= a;
    return *this;
}

Field forward_transform(const Field& f) { return f.to_spectral(); }
Field inverse_transform(const Field& f) { return f.to_physical(); }

} // namespace dlab
