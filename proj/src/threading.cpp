#include "diagcount/threading.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagcount {

int configured_threads() {
    if (const char* env = std::getenv("DIAGCOUNT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace diagcount
