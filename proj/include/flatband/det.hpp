#ifndef FLATBAND_DET_HPP
#define FLATBAND_DET_HPP

#include "flatband/laurent.hpp"

#include <vector>

namespace flatband {

// Determinant over a commutative coefficient ring of Laurent polynomials.
// Laplace expansion memoized on column subsets up to 8x8; fraction-free
// Bareiss (exact divisions) beyond that.
template <class C>
LaurentPoly<C> laurent_matrix_det(const std::vector<std::vector<LaurentPoly<C>>>& m, int dim, const C& one) {
    using R = LaurentPoly<C>;
    const int n = static_cast<int>(m.size());
    if (n == 0) return R::constant(dim, one);
    if (n <= 8) {
        std::vector<R> d(static_cast<size_t>(1) << n, R(dim));
        d[0] = R::constant(dim, one);
        for (unsigned mask = 1; mask < d.size(); ++mask) {
            int r = __builtin_popcount(mask) - 1;
            R acc(dim);
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                if (!m[static_cast<size_t>(r)][static_cast<size_t>(j)].is_zero()) {
                    R sub = m[static_cast<size_t>(r)][static_cast<size_t>(j)] * d[mask & ~(1u << j)];
                    if ((r + pos) % 2 == 0)
                        acc += sub;
                    else
                        acc -= sub;
                }
                ++pos;
            }
            d[mask] = std::move(acc);
        }
        return d[d.size() - 1];
    }
    // Bareiss over the Laurent ring; all divisions are exact.
    std::vector<std::vector<R>> a = m;
    R prev = R::constant(dim, one);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (!a[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) return R(dim);
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(p)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                R t = a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                      a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = laurent_divide_exact(t, prev);
            }
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    R det = a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    return sign < 0 ? -det : det;
}

}  // namespace flatband

#endif
