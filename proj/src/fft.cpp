#include "dlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dlab::fft {

namespace {

// One plan per (size, direction). FFTW planning is not thread-safe; execution
// through fftw_execute_dft on caller buffers is. Plans are created with
// FFTW_UNALIGNED so they accept std::vector storage, and FFTW_ESTIMATE so the
// chosen algorithm is deterministic across runs.
class PlanCache {
  public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<fftw_complex> dummy_in(static_cast<size_t>(n));
        std::vector<fftw_complex> dummy_out(static_cast<size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, dummy_in.data(), dummy_out.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(const std::complex<double>* in, std::complex<double>* out, int n, int sign) {
    fftw_plan p = cache().get(n, sign);
    // fftw_execute_dft does not modify the input array for out-of-place plans.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace

void forward(const std::complex<double>* in, std::complex<double>* out, int n) {
    execute(in, out, n, FFTW_FORWARD);
}

void backward(const std::complex<double>* in, std::complex<double>* out, int n) {
    execute(in, out, n, FFTW_BACKWARD);
}

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> out(in.size());
    forward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

std::vector<std::complex<double>> backward(const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> out(in.size());
    backward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

} // namespace dlab::fft
