#pragma once

namespace diagcount {

// Worker count for the OpenMP kernels: DIAGCOUNT_THREADS when set and
// positive, otherwise the OpenMP default (1 in non-OpenMP builds).
int configured_threads();

}  // namespace diagcount
