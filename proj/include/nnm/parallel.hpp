#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nnm {

/// Number of OpenMP threads a parallel kernel will use (1 without OpenMP).
inline int kernel_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for every i in [0, n) on the OpenMP team. If any call
/// throws, the exception raised at the lowest index is rethrown after the
/// loop, which is what a serial loop would have surfaced first.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr error;
    std::size_t error_index = n;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(nnm_parallel_for_error)
            {
                if (static_cast<std::size_t>(i) < error_index) {
                    error_index = static_cast<std::size_t>(i);
                    error = std::current_exception();
                }
            }
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace nnm
