#include "flatband/generators.hpp"

#include "flatband/floquet.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace flatband {

namespace {

void require_unit_unweighted(const PeriodicGraph& g, const char* what) {
    for (const auto& e : g.edges)
        if (e.weight != GaussianRational(1)) throw error(std::string(what) + " requires unit edge weights");
    for (const auto& q : g.potential)
        if (q != 0) throw error(std::string(what) + " requires zero potential");
}

// Re-express an element of Q(r) inside Q(r + delta): p(a) -> p(a' - delta).
NFElem shift_generator(const NFElem& x, const FieldPtr& to, const Rational& delta) {
    QPoly re = qpoly_taylor_shift(x.re_poly(), -delta);
    QPoly im = qpoly_taylor_shift(x.im_poly(), -delta);
    return NFElem(to, std::move(re), std::move(im));
}

}  // namespace

PeriodicGraph cartesian_product(const PeriodicGraph& base, const FiniteGraph& gf) {
    require_valid(base);
    if (gf.n < 1) throw error("cartesian product needs a nonempty finite graph");
    const int n = gf.n;
    std::vector<EdgeSpec> edges;
    for (const auto& e : base.edges)
        for (int u = 0; u < n; ++u)
            edges.push_back({e.from * n + u, e.to * n + u, e.offset, e.weight});
    for (int p = 0; p < base.nu; ++p)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (gf.edge(u, v)) edges.push_back({p * n + u, p * n + v, zero_offset(base.dimension), GaussianRational(1)});
    std::vector<Rational> q(static_cast<size_t>(base.nu * n));
    for (int p = 0; p < base.nu; ++p)
        for (int u = 0; u < n; ++u) q[static_cast<size_t>(p * n + u)] = base.potential[static_cast<size_t>(p)];
    return PeriodicGraph(base.dimension, base.nu * n, std::move(edges), std::move(q));
}

std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cartesian_flatband(const PeriodicGraph& base,
                                                                             const CompactEigenvector& f,
                                                                             const FiniteGraph& gf) {
    if (!verify_eigenvector(base, f)) throw error("cartesian generator needs a verified base eigenvector");
    PeriodicGraph product = cartesian_product(base, gf);
    const int n = gf.n;
    const bool base_rational = f.lambda.is_rational();

    std::vector<CompactEigenvector> vectors;
    for (const auto& pair : exact_spectrum(gf)) {
        bool mu_rational = pair.value.is_rational();
        if (!base_rational && !mu_rational)
            throw error("cartesian generator supports one irrational side only (single field extension)");
        for (const auto& phi : pair.kernel) {
            CompactEigenvector v;
            v.dim = base.dimension;
            v.nu = product.nu;
            if (base_rational) {
                Rational lb = f.lambda.rational();
                v.lambda = mu_rational ? RealValue(lb + pair.value.rational()) : shift_value(pair.value, lb);
                v.field = NumberField::make(v.lambda);
                for (const auto& [key, val] : f.values) {
                    GaussianRational fv = val.constant_value();
                    if (fv.is_zero()) continue;
                    for (int u = 0; u < n; ++u) {
                        NFElem pv = shift_generator(phi[static_cast<size_t>(u)], v.field, lb);
                        if (pv.is_zero()) continue;
                        v.values[{key.first * n + u, key.second}] = NFElem(fv) * pv;
                    }
                }
            } else {
                Rational mu = pair.value.rational();
                v.lambda = shift_value(f.lambda, mu);
                v.field = NumberField::make(v.lambda);
                for (const auto& [key, val] : f.values) {
                    if (val.is_zero()) continue;
                    NFElem moved = shift_generator(val, v.field, mu);
                    if (moved.is_zero()) continue;
                    for (int u = 0; u < n; ++u) {
                        GaussianRational pv = phi[static_cast<size_t>(u)].constant_value();
                        if (pv.is_zero()) continue;
                        v.values[{key.first * n + u, key.second}] = moved * NFElem(pv);
                    }
                }
            }
            if (!verify_eigenvector(product, v)) throw error("cartesian generator produced a bad eigenvector");
            vectors.push_back(std::move(v));
        }
    }
    return {std::move(product), std::move(vectors)};
}

std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cartesian_flatband_base_zero(const FiniteGraph& gf) {
    PeriodicGraph base(1, 2, {EdgeSpec{0, 0, {1}, GaussianRational(1)}, EdgeSpec{1, 1, {1}, GaussianRational(1)},
                              EdgeSpec{0, 1, {1}, GaussianRational(1)}, EdgeSpec{0, 1, {-1}, GaussianRational(1)}});
    CompactEigenvector f;
    f.field = NumberField::make(RealValue(0));
    f.lambda = RealValue(0);
    f.dim = 1;
    f.nu = 2;
    f.values[{0, {0}}] = NFElem(1);
    f.values[{1, {0}}] = NFElem(-1);
    return cartesian_flatband(base, f, gf);
}

std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cone_periodize(const FiniteGraph& gf) {
    if (!gf.connected()) throw error("cone generator needs a connected graph");
    if (gf.regular_degree() < 0) throw error("cone generator needs a regular graph");
    const int n = gf.n;
    std::vector<EdgeSpec> edges;
    edges.push_back({0, 0, {1}, GaussianRational(1)});
    for (int u = 0; u < n; ++u) edges.push_back({0, u + 1, {0}, GaussianRational(1)});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (gf.edge(u, v)) edges.push_back({u + 1, v + 1, {0}, GaussianRational(1)});
    PeriodicGraph cone(1, n + 1, std::move(edges));

    std::vector<CompactEigenvector> vectors;
    auto spectrum = exact_spectrum(gf);
    for (size_t idx = 0; idx + 1 < spectrum.size(); ++idx) {  // the simple top eigenvalue stays dispersive
        const auto& pair = spectrum[idx];
        for (const auto& phi : pair.kernel) {
            CompactEigenvector v;
            v.field = pair.field;
            v.lambda = pair.value;
            v.dim = 1;
            v.nu = n + 1;
            for (int u = 0; u < n; ++u)
                if (!phi[static_cast<size_t>(u)].is_zero()) v.values[{u + 1, {0}}] = phi[static_cast<size_t>(u)];
            if (!verify_eigenvector(cone, v)) throw error("cone generator produced a bad eigenvector");
            vectors.push_back(std::move(v));
        }
    }
    return {std::move(cone), std::move(vectors)};
}

PeriodicGraph no_flatband_product(const PeriodicGraph& lattice, const FiniteGraph& gf, ProductKind kind) {
    require_valid(lattice);
    if (lattice.nu != 1) throw error("no-flat-band products start from a nu=1 lattice");
    require_unit_unweighted(lattice, "no-flat-band product");
    if (!is_connected(lattice)) throw error("no-flat-band products need a connected lattice");
    if (kind == ProductKind::Cartesian) return cartesian_product(lattice, gf);

    if (gf.bipartite()) throw error("tensor product needs a non-bipartite finite graph");
    ZPoly cp = finite_char_poly(gf);
    if (cp.coeff(0) == 0) throw error("tensor product needs 0 outside the finite spectrum");
    std::vector<EdgeSpec> edges;
    for (const auto& e : lattice.edges) {
        for (int u = 0; u < gf.n; ++u)
            for (int v = u + 1; v < gf.n; ++v)
                if (gf.edge(u, v)) {
                    edges.push_back({u, v, e.offset, GaussianRational(1)});
                    edges.push_back({u, v, negate(e.offset), GaussianRational(1)});
                }
    }
    PeriodicGraph out(lattice.dimension, gf.n, std::move(edges));
    if (!is_connected(out)) throw error("tensor product unexpectedly disconnected");
    return out;
}

std::string LocalSymmetry::cycle_notation() const {
    std::ostringstream os;
    for (const auto& c : cycles) {
        if (c.size() < 2) continue;
        os << "(";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
        os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

namespace {

std::vector<std::vector<int>> cycle_decomposition(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<int> c;
        int v = s;
        while (!seen[static_cast<size_t>(v)]) {
            seen[static_cast<size_t>(v)] = true;
            c.push_back(v);
            v = perm[static_cast<size_t>(v)];
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

std::vector<std::vector<int>> epsilon_matrix(const PeriodicGraph& g) {
    std::vector<std::vector<int>> eps(static_cast<size_t>(g.nu), std::vector<int>(static_cast<size_t>(g.nu), 0));
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j)
            if (i != j && g.adjacent_in_cell(i, j)) eps[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
    return eps;
}

std::vector<std::vector<std::set<Offset>>> stripped_rows(const PeriodicGraph& g) {
    Offset zero = zero_offset(g.dimension);
    std::vector<std::vector<std::set<Offset>>> rows(static_cast<size_t>(g.nu),
                                                    std::vector<std::set<Offset>>(static_cast<size_t>(g.nu)));
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j) {
            auto s = g.offsets(i, j);
            s.erase(zero);
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(s);
        }
    return rows;
}

bool epsilon_condition(const std::vector<std::vector<int>>& eps, const std::vector<int>& perm,
                       const std::vector<std::vector<int>>& cycles, SymmetryMode mode) {
    const int n = static_cast<int>(perm.size());
    if (mode == SymmetryMode::Strict) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (eps[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                    eps[static_cast<size_t>(perm[static_cast<size_t>(i)])][static_cast<size_t>(perm[static_cast<size_t>(j)])])
                    return false;
        return true;
    }
    // Equitable partition: constant row sums in every cycle-to-cycle block.
    for (const auto& xs : cycles)
        for (const auto& xt : cycles) {
            int want = -1;
            for (int i : xs) {
                int sum = 0;
                for (int j : xt) sum += eps[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (want < 0) want = sum;
                if (sum != want) return false;
            }
        }
    return true;
}

}  // namespace

bool symmetry_valid(const PeriodicGraph& g, const LocalSymmetry& sym, SymmetryMode mode) {
    if (static_cast<int>(sym.perm.size()) != g.nu) return false;
    auto rows = stripped_rows(g);
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                rows[static_cast<size_t>(sym.perm[static_cast<size_t>(i)])][static_cast<size_t>(j)])
                return false;
    return epsilon_condition(epsilon_matrix(g), sym.perm, sym.cycles, mode);
}

std::vector<LocalSymmetry> find_local_symmetries(const PeriodicGraph& g, SymmetryMode mode) {
    require_valid(g);
    require_unit_unweighted(g, "local symmetry analysis");
    if (g.nu > 10) throw error("symmetry search limited to nu <= 10");
    auto rows = stripped_rows(g);
    auto eps = epsilon_matrix(g);

    // phi may only map i onto vertices with an identical stripped index-set row.
    std::vector<std::vector<int>> candidates(static_cast<size_t>(g.nu));
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j)
            if (rows[static_cast<size_t>(i)] == rows[static_cast<size_t>(j)]) candidates[static_cast<size_t>(i)].push_back(j);

    std::vector<LocalSymmetry> out;
    std::vector<int> perm(static_cast<size_t>(g.nu), -1);
    std::vector<bool> used(static_cast<size_t>(g.nu), false);
    std::function<void(int)> rec = [&](int i) {
        if (i == g.nu) {
            bool identity = true;
            for (int k = 0; k < g.nu; ++k)
                if (perm[static_cast<size_t>(k)] != k) identity = false;
            if (identity) return;
            auto cycles = cycle_decomposition(perm);
            if (!epsilon_condition(eps, perm, cycles, mode)) return;
            LocalSymmetry sym;
            sym.perm = perm;
            sym.cycles = std::move(cycles);
            sym.strict = epsilon_condition(eps, perm, sym.cycles, SymmetryMode::Strict);
            out.push_back(std::move(sym));
            return;
        }
        for (int j : candidates[static_cast<size_t>(i)]) {
            if (used[static_cast<size_t>(j)]) continue;
            perm[static_cast<size_t>(i)] = j;
            used[static_cast<size_t>(j)] = true;
            rec(i + 1);
            used[static_cast<size_t>(j)] = false;
            perm[static_cast<size_t>(i)] = -1;
        }
    };
    rec(0);
    return out;
}

std::vector<std::pair<RealValue, CompactEigenvector>> symmetry_flat_bands(const PeriodicGraph& g,
                                                                          const LocalSymmetry& sym) {
    require_unit_unweighted(g, "symmetry flat bands");
    if (!symmetry_valid(g, sym, SymmetryMode::Equitable)) throw error("invalid local symmetry");
    const int nu = g.nu;
    const int r = sym.cycle_count();
    if (r == nu) throw error("trivial symmetry (all cycles are fixed points)");

    // Unnormalized cycle indicators (mutually orthogonal), completed by
    // standard basis vectors in lexicographic order, then orthogonalized.
    std::vector<std::vector<Rational>> basis;
    for (const auto& c : sym.cycles) {
        std::vector<Rational> y(static_cast<size_t>(nu), Rational(0));
        for (int v : c) y[static_cast<size_t>(v)] = 1;
        basis.push_back(std::move(y));
    }
    auto dot = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s(0);
        for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
        return s;
    };
    for (int j = 0; j < nu && static_cast<int>(basis.size()) < nu; ++j) {
        std::vector<Rational> y(static_cast<size_t>(nu), Rational(0));
        y[static_cast<size_t>(j)] = 1;
        for (const auto& b : basis) {
            Rational c = dot(y, b) / dot(b, b);
            if (c != 0)
                for (size_t k = 0; k < y.size(); ++k) y[k] -= c * b[k];
        }
        bool zero = std::all_of(y.begin(), y.end(), [](const Rational& q) { return q == 0; });
        if (!zero) basis.push_back(std::move(y));
    }
    if (static_cast<int>(basis.size()) != nu) throw error("basis completion failed");

    auto eps = epsilon_matrix(g);
    auto apply_eps = [&](const std::vector<Rational>& y) {
        std::vector<Rational> z(static_cast<size_t>(nu), Rational(0));
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nu; ++j)
                if (eps[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) z[static_cast<size_t>(i)] += y[static_cast<size_t>(j)];
        return z;
    };

    const int m = nu - r;
    std::vector<std::vector<Rational>> rmat(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m)));
    for (int t = 0; t < m; ++t) {
        auto cy = apply_eps(basis[static_cast<size_t>(r + t)]);
        for (int s = 0; s < m; ++s)
            rmat[static_cast<size_t>(s)][static_cast<size_t>(t)] =
                dot(basis[static_cast<size_t>(r + s)], cy) / dot(basis[static_cast<size_t>(r + s)], basis[static_cast<size_t>(r + s)]);
    }

    // Faddeev-LeVerrier char poly of the restricted rational matrix.
    std::vector<Rational> c(static_cast<size_t>(m) + 1, Rational(0));
    c[static_cast<size_t>(m)] = 1;
    {
        auto mm = rmat;
        for (int k = 1; k <= m; ++k) {
            Rational tr(0);
            for (int i = 0; i < m; ++i) tr += mm[static_cast<size_t>(i)][static_cast<size_t>(i)];
            Rational ck = -tr / k;
            c[static_cast<size_t>(m - k)] = ck;
            if (k == m) break;
            for (int i = 0; i < m; ++i) mm[static_cast<size_t>(i)][static_cast<size_t>(i)] += ck;
            std::vector<std::vector<Rational>> next(static_cast<size_t>(m),
                                                    std::vector<Rational>(static_cast<size_t>(m), Rational(0)));
            for (int i = 0; i < m; ++i)
                for (int l = 0; l < m; ++l) {
                    if (rmat[static_cast<size_t>(i)][static_cast<size_t>(l)] == 0) continue;
                    for (int j = 0; j < m; ++j)
                        next[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                            rmat[static_cast<size_t>(i)][static_cast<size_t>(l)] * mm[static_cast<size_t>(l)][static_cast<size_t>(j)];
                }
            mm = std::move(next);
        }
    }
    ZPoly charpoly = primitive_part(QPoly(std::move(c)));

    std::vector<std::pair<RealValue, CompactEigenvector>> out;
    for (const auto& root : isolate_real_roots(charpoly)) {
        FieldPtr field = NumberField::make(root.value);
        NFElem lambda = NFElem::generator(field);
        std::vector<std::vector<NFElem>> shifted(static_cast<size_t>(m), std::vector<NFElem>(static_cast<size_t>(m)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                shifted[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    NFElem(rmat[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                if (i == j) shifted[static_cast<size_t>(i)][static_cast<size_t>(j)] -= lambda;
            }
        for (const auto& phi : nf_kernel_basis(std::move(shifted))) {
            CompactEigenvector v;
            v.field = field;
            v.lambda = root.value;
            v.dim = g.dimension;
            v.nu = nu;
            for (int i = 0; i < nu; ++i) {
                NFElem acc;
                for (int t = 0; t < m; ++t)
                    acc += NFElem(basis[static_cast<size_t>(r + t)][static_cast<size_t>(i)]) * phi[static_cast<size_t>(t)];
                if (!acc.is_zero()) v.values[{i, zero_offset(g.dimension)}] = acc;
            }
            if (!verify_eigenvector(g, v)) throw error("symmetry flat band failed verification");
            out.push_back({root.value, std::move(v)});
        }
    }
    return out;
}

}  // namespace flatband
