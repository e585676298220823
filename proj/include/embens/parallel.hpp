#ifndef EMBENS_PARALLEL_HPP
#define EMBENS_PARALLEL_HPP

namespace embens {

// Number of threads the parallel kernels will use.
// Resolution order: set_max_threads() override, then the EMBENS_THREADS
// environment variable, then the OpenMP default. A value of 0 means "auto".
int max_threads();

// Override the thread count at runtime (0 restores auto).
void set_max_threads(int n);

} // namespace embens

#endif
