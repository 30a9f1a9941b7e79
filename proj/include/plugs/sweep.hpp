#pragma once

#include <cstddef>
#include <vector>

#ifdef PLUGKIT_HAVE_OPENMP
#include <omp.h>
#endif

// Data-parallel sweep kernels. Every sweep in the library goes through
// parallel_for so that results are aggregated by point index, never by
// completion order: identical inputs give identical reports regardless
// of thread count. A serial twin is kept for testing and benchmarking.

namespace plugs {

template <class F>
void serial_for(std::size_t n, F&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef PLUGKIT_HAVE_OPENMP
    #pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
#else
    serial_for(n, body);
#endif
}

// Map each index to a value; deterministic by construction (slot per index).
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

template <class T, class F>
std::vector<T> serial_map(std::size_t n, F&& f) {
    std::vector<T> out(n);
    serial_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace plugs
