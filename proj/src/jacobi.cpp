#include "flatband/jacobi.hpp"

#include "flatband/rational.hpp"

#include <algorithm>
#include <cmath>

namespace flatband {

std::vector<double> hermitian_eigenvalues(std::vector<std::vector<std::complex<double>>> a, int max_sweeps) {
    const size_t n = a.size();
    if (n == 0) return {};
    // Symmetrize from the upper triangle.
    for (size_t i = 0; i < n; ++i) {
        a[i][i] = std::complex<double>(a[i][i].real(), 0.0);
        for (size_t j = i + 1; j < n; ++j) a[j][i] = std::conj(a[i][j]);
    }
    double norm = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(a[i][j]));
    const double eps = 1e-14 * std::max(1.0, norm);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += std::norm(a[p][q]);
        if (std::sqrt(off) <= eps) {
            std::vector<double> ev(n);
            for (size_t i = 0; i < n; ++i) ev[i] = a[i][i].real();
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double g = std::abs(a[p][q]);
                if (g <= eps * 1e-2) continue;
                std::complex<double> phase = a[p][q] / g;
                double alpha = a[p][p].real(), beta = a[q][q].real();
                double tau = (beta - alpha) / (2 * g);
                double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1 + tau * tau))
                                    : -1.0 / (-tau + std::sqrt(1 + tau * tau));
                double c = 1.0 / std::sqrt(1 + t * t);
                double s = t * c;
                // Unitary U: u_pp = c, u_pq = s*phase, u_qp = -s*conj(phase), u_qq = c;
                // chosen so the updated a_pq vanishes.
                for (size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    std::complex<double> akp = a[k][p], akq = a[k][q];
                    a[k][p] = akp * c - akq * s * std::conj(phase);
                    a[k][q] = akp * s * phase + akq * c;
                    a[p][k] = std::conj(a[k][p]);
                    a[q][k] = std::conj(a[k][q]);
                }
                a[p][p] = alpha * c * c - 2 * g * c * s + beta * s * s;
                a[q][q] = alpha * s * s + 2 * g * c * s + beta * c * c;
                a[p][q] = 0;
                a[q][p] = 0;
            }
        }
    }
    throw error("jacobi eigensolver did not converge");
}

}  // namespace flatband
