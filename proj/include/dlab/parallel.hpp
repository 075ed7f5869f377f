#pragma once

namespace dlab::parallel {

// Thread budget for OpenMP kernels. DLAB_THREADS caps the pool; unset or
// invalid values fall back to the OpenMP default. Read once, cached.
int max_threads();

enum class Policy { Serial, Parallel };

} // namespace dlab::parallel
