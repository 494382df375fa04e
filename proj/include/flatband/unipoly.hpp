#ifndef FLATBAND_UNIPOLY_HPP
#define FLATBAND_UNIPOLY_HPP

#include "flatband/rational.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace flatband {

// Dense univariate polynomial, coefficients ascending by degree, no trailing zeros.
template <class C>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(C v) { return UniPoly(std::vector<C>{std::move(v)}); }
    static UniPoly variable() { return UniPoly(std::vector<C>{C{}, C{1}}); }
    static UniPoly monomial(int deg, C v) {
        std::vector<C> c(static_cast<size_t>(deg) + 1, C{});
        c.back() = std::move(v);
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    const std::vector<C>& coeffs() const { return c_; }
    C coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return C{};
        return c_[static_cast<size_t>(k)];
    }
    const C& leading() const { return c_.back(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C{});
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C{});
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<C> r = a.c_;
        for (auto& v : r) v = -v;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C{});
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff_is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const C& s) {
        std::vector<C> r = a.c_;
        for (auto& v : r) v = v * s;
        return UniPoly(std::move(r));
    }
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    template <class V>
    V evaluate(const V& x) const {
        V acc{};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<C> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * C(static_cast<int>(i));
        return UniPoly(std::move(r));
    }

    template <class F>
    auto map(F f) const -> UniPoly<decltype(f(std::declval<C>()))> {
        std::vector<decltype(f(std::declval<C>()))> r;
        r.reserve(c_.size());
        for (const auto& v : c_) r.push_back(f(v));
        return UniPoly<decltype(f(std::declval<C>()))>(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

template <class C>
inline bool coeff_is_zero(const UniPoly<C>& p) {
    return p.is_zero();
}
template <class C>
inline UniPoly<C> coeff_conj(const UniPoly<C>& p) {
    return p.map([](const C& c) { return coeff_conj(c); });
}

using ZPoly = UniPoly<Int>;
using QPoly = UniPoly<Rational>;
using GPoly = UniPoly<GaussianRational>;

// Quotient/remainder over a field coefficient ring.
template <class C>
std::pair<UniPoly<C>, UniPoly<C>> divmod(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.is_zero()) throw error("polynomial division by zero");
    std::vector<C> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {UniPoly<C>(), a};
    std::vector<C> quo(static_cast<size_t>(a.degree() - db) + 1, C{});
    for (int k = a.degree(); k >= db; --k) {
        C lead = rem[static_cast<size_t>(k)];
        if (coeff_is_zero(lead)) continue;
        C q = lead / b.leading();
        quo[static_cast<size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(k - db + j)] = rem[static_cast<size_t>(k - db + j)] - q * b.coeff(j);
    }
    return {UniPoly<C>(std::move(quo)), UniPoly<C>(std::move(rem))};
}

template <class C>
UniPoly<C> poly_mod(const UniPoly<C>& a, const UniPoly<C>& b) {
    return divmod(a, b).second;
}

// Exact division; throws if the division leaves a remainder.
template <class C>
UniPoly<C> divide_exact(const UniPoly<C>& a, const UniPoly<C>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q;
}

// Division in determinant kernels is always exact division.
template <class C>
UniPoly<C> operator/(const UniPoly<C>& a, const UniPoly<C>& b) {
    return divide_exact(a, b);
}

// p(x + c).
inline UniPoly<Rational> qpoly_taylor_shift(const UniPoly<Rational>& p, const Rational& c) {
    if (p.is_zero() || c == 0) return p;
    std::vector<Rational> a(p.coeffs().begin(), p.coeffs().end());
    int n = p.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) a[static_cast<size_t>(j)] += c * a[static_cast<size_t>(j) + 1];
    return UniPoly<Rational>(std::move(a));
}

inline QPoly to_qpoly(const ZPoly& p) {
    return p.map([](const Int& c) { return Rational(c); });
}

inline Int zpoly_content(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p.coeffs()) g = int_gcd(g, c);
    return g;
}

// Primitive integer representative with positive leading coefficient.
inline ZPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return ZPoly();
    Int l = 1;
    for (const auto& c : p.coeffs()) l = int_lcm(l, den(c));
    std::vector<Int> zc;
    zc.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) zc.emplace_back(num(c) * (l / den(c)));
    ZPoly zp(std::move(zc));
    Int g = zpoly_content(zp);
    if (zp.leading() < 0) g = -g;
    return zp.map([&](const Int& c) { return Int(c / g); });
}

inline QPoly make_monic(const QPoly& p) {
    if (p.is_zero()) return p;
    Rational l = p.leading();
    return p.map([&](const Rational& c) { return Rational(c / l); });
}

// gcd over Q[x], returned as the primitive integer representative.
inline ZPoly zpoly_gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() && b.is_zero()) throw error("gcd of two zero polynomials");
    QPoly x = to_qpoly(a), y = to_qpoly(b);
    while (!y.is_zero()) {
        QPoly r = poly_mod(x, y);
        x = std::move(y);
        y = make_monic(r);
    }
    return primitive_part(x);
}

inline QPoly qpoly_gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return make_monic(x);
}

// Square-free decomposition over Q (Yun): p ~ prod factors[i].first^(factors[i].second).
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p);

// Evaluate sign of p at a rational point.
inline int sign_at(const ZPoly& p, const Rational& x) {
    Rational v = to_qpoly(p).evaluate(x);
    return sign_of(v);
}

// Number of distinct real roots of squarefree p in (a, b], by Sturm's theorem.
int sturm_count(const ZPoly& p, const Rational& a, const Rational& b);
// Total number of distinct real roots.
int sturm_count_all(const ZPoly& p);
// Cauchy bound: all real roots lie in (-B, B).
Rational root_bound(const ZPoly& p);

std::string poly_to_string(const ZPoly& p, const std::string& var);
std::string poly_to_string(const QPoly& p, const std::string& var);

}  // namespace flatband

#endif
