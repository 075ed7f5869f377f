#pragma once

#include <complex>
#include <vector>

namespace dlab::fft {

// Unnormalized complex DFTs:
//   forward:  F[m] = sum_j a[j] exp(-2*pi*i*j*m/n)
//   backward: a[j] = sum_m F[m] exp(+2*pi*i*j*m/n)
// Plans are cached per size and safe to execute concurrently.
void forward(const std::complex<double>* in, std::complex<double>* out, int n);
void backward(const std::complex<double>* in, std::complex<double>* out, int n);

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> backward(const std::vector<std::complex<double>>& in);

} // namespace dlab::fft
