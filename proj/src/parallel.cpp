#include "setbm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace setbm {

int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("SETBM_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return n;
}

}  // namespace setbm
