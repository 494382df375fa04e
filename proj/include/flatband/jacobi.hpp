#ifndef FLATBAND_JACOBI_HPP
#define FLATBAND_JACOBI_HPP

#include <complex>
#include <vector>

namespace flatband {

// Cyclic Jacobi eigensolver for complex Hermitian matrices (small dense).
// Only the upper triangle of `a` is read.  Returns ascending eigenvalues.
// Throws flatband::error after `max_sweeps` sweeps without convergence.
std::vector<double> hermitian_eigenvalues(std::vector<std::vector<std::complex<double>>> a,
                                          int max_sweeps = 30);

}  // namespace flatband

#endif
