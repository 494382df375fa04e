#include "flatband/eigenvectors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace flatband {

using nlohmann::ordered_json;
using NFLaurent = LaurentPoly<NFElem>;
using NFMatrix = std::vector<std::vector<NFLaurent>>;

std::pair<int, int> CompactEigenvector::window(int axis) const {
    bool first = true;
    int lo = 0, hi = 0;
    for (const auto& [key, val] : values) {
        if (val.is_zero()) continue;
        int c = key.second[static_cast<size_t>(axis)];
        if (first || c < lo) lo = c;
        if (first || c > hi) hi = c;
        first = false;
    }
    return {lo, hi};
}

std::vector<std::vector<NFLaurent>> shifted_symbol(const FloquetSymbol& s, const FieldPtr& field) {
    NFElem lambda = NFElem::generator(field);
    NFMatrix b(static_cast<size_t>(s.nu), std::vector<NFLaurent>(static_cast<size_t>(s.nu), NFLaurent(s.dim)));
    for (int i = 0; i < s.nu; ++i)
        for (int j = 0; j < s.nu; ++j) {
            NFLaurent e = s.at(i, j).map([&](const GaussianRational& c) { return NFElem(c); });
            if (i == j) e.add_term(zero_offset(s.dim), -lambda);
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    return b;
}

namespace {

bool matrix_is_zero(const NFMatrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

NFMatrix matrix_mul(const NFMatrix& a, const NFMatrix& b, int dim) {
    size_t n = a.size();
    NFMatrix r(n, std::vector<NFLaurent>(n, NFLaurent(dim)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero()) continue;
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    return r;
}

// Rational content over every coefficient of every entry.
Rational vector_content(const std::vector<NFLaurent>& entries) {
    Int n = 0, d = 1;
    auto absorb = [&](const Rational& q) {
        if (q == 0) return;
        n = int_gcd(n, num(q));
        d = int_lcm(d, den(q));
    };
    for (const auto& e : entries)
        for (const auto& [k, v] : e.terms()) {
            for (const auto& c : v.re_poly().coeffs()) absorb(c);
            for (const auto& c : v.im_poly().coeffs()) absorb(c);
        }
    if (n == 0) return Rational(1);
    return Rational(n, d);
}

UniPoly<NFElem> to_unipoly_z(const NFLaurent& e) {
    std::vector<NFElem> c(static_cast<size_t>(e.max_exponent(0)) + 1);
    for (const auto& [k, v] : e.terms()) {
        if (k[0] < 0) throw error("negative exponent after monomial shift");
        c[static_cast<size_t>(k[0])] = v;
    }
    return UniPoly<NFElem>(std::move(c));
}

NFLaurent from_unipoly_z(const UniPoly<NFElem>& p) {
    NFLaurent e(1);
    for (int k = 0; k <= p.degree(); ++k) {
        NFElem c = p.coeff(k);
        if (!c.is_zero()) e.add_term(Offset{k}, c);
    }
    return e;
}

UniPoly<NFElem> nf_poly_gcd(UniPoly<NFElem> a, UniPoly<NFElem> b) {
    while (!b.is_zero()) {
        UniPoly<NFElem> r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

void normalize(std::vector<NFLaurent>& entries, int dim) {
    // Common monomial factor.
    auto shift_to_origin = [&]() {
        Offset shift(static_cast<size_t>(dim), 0);
        bool first = true;
        for (const auto& e : entries) {
            if (e.is_zero()) continue;
            for (int r = 0; r < dim; ++r) {
                int m = e.min_exponent(r);
                if (first || m < shift[static_cast<size_t>(r)]) shift[static_cast<size_t>(r)] = m;
            }
            first = false;
        }
        if (!is_zero_offset(shift))
            for (auto& e : entries) e = e.shifted(negate(shift));
    };
    shift_to_origin();

    // Full univariate content only in one dimension; the gcd is made monic so
    // the division keeps the raw column's signs.
    if (dim == 1) {
        UniPoly<NFElem> g;
        for (const auto& e : entries) {
            if (e.is_zero()) continue;
            UniPoly<NFElem> u = to_unipoly_z(e);
            g = g.is_zero() ? u : nf_poly_gcd(g, u);
        }
        if (g.degree() > 0) {
            NFElem linv = g.leading().inverse();
            g = g.map([&](const NFElem& c) { return NFElem(c * linv); });
            for (auto& e : entries) {
                if (e.is_zero()) continue;
                e = from_unipoly_z(divide_exact(to_unipoly_z(e), g));
            }
            shift_to_origin();
        }
    }

    Rational content = vector_content(entries);  // positive
    if (content != 1) {
        NFElem s{Rational(1) / content};
        for (auto& e : entries) e = e.map([&](const NFElem& c) { return NFElem(c * s); });
    }
}

}  // namespace

SymbolVector synthesize_symbol_eigenvector(const FloquetSymbol& s, const CharPoly& cp, const RealValue& lambda0,
                                           int multiplicity) {
    FieldPtr field = NumberField::make(lambda0);
    NFMatrix b = shifted_symbol(s, field);
    NFElem l0 = NFElem::generator(field);
    const int nu = s.nu, m = multiplicity;
    if (m < 1 || m > nu) throw error("flat band multiplicity out of range");

    // Taylor-shift each z-coefficient of p(z; lambda) to lambda0 and divide by
    // mu^m: q(z; mu) has Laurent coefficients q_j(z) for j = 0..nu-m.
    std::vector<NFLaurent> q(static_cast<size_t>(nu - m + 1), NFLaurent(s.dim));
    for (const auto& [k, c] : cp.p.terms()) {
        std::vector<NFElem> a(static_cast<size_t>(nu) + 1);
        for (int j = 0; j <= c.degree(); ++j) a[static_cast<size_t>(j)] = NFElem(c.coeff(j));
        for (int i = 0; i < nu; ++i)
            for (int j = nu - 1; j >= i; --j) a[static_cast<size_t>(j)] += l0 * a[static_cast<size_t>(j) + 1];
        for (int j = 0; j < m; ++j)
            if (!a[static_cast<size_t>(j)].is_zero())
                throw error("flat band multiplicity inconsistent with the characteristic polynomial");
        for (int j = m; j <= nu; ++j) {
            NFElem v = a[static_cast<size_t>(j)];
            if (!v.is_zero()) q[static_cast<size_t>(j - m)].add_term(k, v);
        }
    }

    // Matrix Horner for Q = q(B), then the minimal n with B^{n+1} Q = 0.
    auto scalar_matrix = [&](const NFLaurent& v) {
        NFMatrix r(static_cast<size_t>(nu), std::vector<NFLaurent>(static_cast<size_t>(nu), NFLaurent(s.dim)));
        for (int i = 0; i < nu; ++i) r[static_cast<size_t>(i)][static_cast<size_t>(i)] = v;
        return r;
    };
    NFMatrix acc = scalar_matrix(q.back());
    for (int j = nu - m - 1; j >= 0; --j) {
        acc = matrix_mul(acc, b, s.dim);
        for (int i = 0; i < nu; ++i)
            acc[static_cast<size_t>(i)][static_cast<size_t>(i)] += q[static_cast<size_t>(j)];
    }
    if (matrix_is_zero(acc)) throw error("synthesis failed: q(B) vanished (detection bug)");
    for (int n = 0; n < m; ++n) {
        NFMatrix next = matrix_mul(b, acc, s.dim);
        if (matrix_is_zero(next)) break;
        acc = std::move(next);
        if (n == m - 1) throw error("synthesis failed: no annihilating power (detection bug)");
    }

    SymbolVector f;
    f.field = field;
    f.dim = s.dim;
    for (int j = 0; j < nu; ++j) {
        bool nonzero = false;
        for (int i = 0; i < nu; ++i)
            if (!acc[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) nonzero = true;
        if (!nonzero) continue;
        for (int i = 0; i < nu; ++i) f.entries.push_back(acc[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        break;
    }
    if (f.entries.empty()) throw error("synthesis failed: zero matrix column (detection bug)");
    normalize(f.entries, s.dim);
    return f;
}

bool in_kernel(const FloquetSymbol& s, const SymbolVector& f) {
    if (static_cast<int>(f.entries.size()) != s.nu) return false;
    NFMatrix b = shifted_symbol(s, f.field);
    for (int i = 0; i < s.nu; ++i) {
        NFLaurent row(s.dim);
        for (int j = 0; j < s.nu; ++j) row += b[static_cast<size_t>(i)][static_cast<size_t>(j)] * f.entries[static_cast<size_t>(j)];
        if (!row.is_zero()) return false;
    }
    return true;
}

CompactEigenvector unfold(const SymbolVector& f, const RealValue& lambda0, int nu) {
    if (static_cast<int>(f.entries.size()) != nu) throw error("symbol vector arity mismatch");
    CompactEigenvector v;
    v.field = f.field;
    v.lambda = lambda0;
    v.dim = f.dim;
    v.nu = nu;
    for (int p = 0; p < nu; ++p)
        for (const auto& [k, c] : f.entries[static_cast<size_t>(p)].terms()) v.values[{p, negate(k)}] = c;
    // Recentre the bounding box.
    Offset shift(static_cast<size_t>(f.dim), 0);
    for (int r = 0; r < f.dim; ++r) {
        auto [lo, hi] = v.window(r);
        shift[static_cast<size_t>(r)] = (lo + hi) / 2 + (((lo + hi) % 2 != 0 && (lo + hi) < 0) ? -1 : 0);
    }
    if (!is_zero_offset(shift)) v = translate(v, negate(shift));
    return v;
}

SymbolVector refold(const CompactEigenvector& v) {
    SymbolVector f;
    f.field = v.field;
    f.dim = v.dim;
    f.entries.assign(static_cast<size_t>(v.nu), LaurentPoly<NFElem>(v.dim));
    for (const auto& [key, val] : v.values) {
        if (val.is_zero()) continue;
        f.entries[static_cast<size_t>(key.first)].add_term(negate(key.second), val);
    }
    return f;
}

CompactEigenvector translate(const CompactEigenvector& v, const Offset& by) {
    CompactEigenvector out = v;
    out.values.clear();
    for (const auto& [key, val] : v.values) out.values[{key.first, add(key.second, by)}] = val;
    return out;
}

bool verify_eigenvector(const PeriodicGraph& g, const CompactEigenvector& v) {
    if (v.nu != g.nu || v.dim != g.dimension) return false;
    bool any = false;
    for (const auto& [key, val] : v.values)
        if (!val.is_zero()) any = true;
    if (!any) return false;

    if (!v.field && !v.lambda.is_rational()) return false;
    if (v.field && !v.field->root_value().equals(v.lambda)) return false;
    NFElem lambda = v.field ? NFElem::generator(v.field) : NFElem(v.lambda.rational());
    // Hop offsets, including zero, over all derived index sets.
    std::set<Offset> hops;
    hops.insert(zero_offset(g.dimension));
    for (const auto& e : g.edges) {
        hops.insert(e.offset);
        hops.insert(negate(e.offset));
    }
    std::set<Offset> cells;
    for (const auto& [key, val] : v.values)
        for (const auto& h : hops) cells.insert(sub(key.second, h));
    for (const auto& [key, val] : v.values) cells.insert(key.second);

    std::vector<std::map<Offset, GaussianRational>> idx(static_cast<size_t>(g.nu) * static_cast<size_t>(g.nu));
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j) idx[static_cast<size_t>(i * g.nu + j)] = g.index_set(i, j);

    for (const auto& r : cells) {
        for (int i = 0; i < g.nu; ++i) {
            NFElem acc;
            for (int j = 0; j < g.nu; ++j)
                for (const auto& [k, w] : idx[static_cast<size_t>(i * g.nu + j)]) {
                    NFElem psi = v.at(j, add(r, k));
                    if (!psi.is_zero()) acc += NFElem(w) * psi;
                }
            acc += NFElem(g.potential[static_cast<size_t>(i)]) * v.at(i, r);
            acc -= lambda * v.at(i, r);
            if (!acc.is_zero()) return false;
        }
    }
    return true;
}

std::string eigenvector_to_json(const CompactEigenvector& v) {
    ordered_json j;
    ordered_json mp = ordered_json::array();
    ZPoly lm = v.lambda.minpoly();
    for (const auto& c : lm.coeffs()) mp.push_back(c.str());
    j["lambda_minpoly"] = mp;
    j["lambda"] = v.lambda.to_string();
    j["dimension"] = v.dim;
    j["nu"] = v.nu;
    j["entries"] = ordered_json::array();
    for (const auto& [key, val] : v.values) {
        if (val.is_zero()) continue;
        ordered_json je;
        je["vertex"] = key.first;
        je["offset"] = key.second;
        ordered_json re = ordered_json::array(), im = ordered_json::array();
        for (const auto& c : val.re_poly().coeffs()) re.push_back(rat_to_string(c));
        for (const auto& c : val.im_poly().coeffs()) im.push_back(rat_to_string(c));
        je["value"] = ordered_json{{"re", re}, {"im", im}};
        j["entries"].push_back(je);
    }
    return j.dump(2) + "\n";
}

}  // namespace flatband
