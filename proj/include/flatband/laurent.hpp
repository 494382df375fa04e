#ifndef FLATBAND_LAURENT_HPP
#define FLATBAND_LAURENT_HPP

#include "flatband/rational.hpp"

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace flatband {

// Lattice translation / monomial exponent vector.
using Offset = std::vector<int>;

inline Offset zero_offset(int d) { return Offset(static_cast<size_t>(d), 0); }
inline Offset negate(const Offset& k) {
    Offset r = k;
    for (auto& v : r) v = -v;
    return r;
}
inline Offset add(const Offset& a, const Offset& b) {
    Offset r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
inline Offset sub(const Offset& a, const Offset& b) {
    Offset r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
inline bool is_zero_offset(const Offset& k) {
    for (int v : k)
        if (v != 0) return false;
    return true;
}
// Lexicographically positive: first nonzero component positive.
inline bool lex_positive(const Offset& k) {
    for (int v : k) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}
inline std::string offset_to_string(const Offset& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ")";
}

// Graded lexicographic order on exponent vectors (grade = coordinate sum).
struct GradedLex {
    bool operator()(const Offset& a, const Offset& b) const {
        long sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    }
};

// Sparse Laurent polynomial in d variables over an exact coefficient ring C.
template <class C>
class LaurentPoly {
public:
    using Terms = std::map<Offset, C>;

    explicit LaurentPoly(int dim = 1) : dim_(dim) {}
    static LaurentPoly zero(int dim) { return LaurentPoly(dim); }
    static LaurentPoly constant(int dim, C v) {
        LaurentPoly p(dim);
        p.add_term(zero_offset(dim), std::move(v));
        return p;
    }
    static LaurentPoly monomial(Offset k, C v) {
        LaurentPoly p(static_cast<int>(k.size()));
        p.add_term(std::move(k), std::move(v));
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const Terms& terms() const { return t_; }

    void add_term(Offset k, C v) {
        if (static_cast<int>(k.size()) != dim_) throw error("laurent term dimension mismatch");
        if (coeff_is_zero(v)) return;
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_.emplace(std::move(k), std::move(v));
        } else {
            it->second = it->second + v;
            if (coeff_is_zero(it->second)) t_.erase(it);
        }
    }

    C coeff(const Offset& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? C{} : it->second;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r = a;
        for (const auto& [k, v] : b.t_) r.add_term(k, v);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r = a;
        for (const auto& [k, v] : b.t_) r.add_term(k, -v);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r(a.dim_);
        for (const auto& [k, v] : a.t_) r.t_.emplace(k, -v);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r(a.dim_);
        for (const auto& [ka, va] : a.t_)
            for (const auto& [kb, vb] : b.t_) r.add_term(add(ka, kb), va * vb);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const C& s) {
        LaurentPoly r(a.dim_);
        if (coeff_is_zero(s)) return r;
        for (const auto& [k, v] : a.t_) r.add_term(k, v * s);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dim_ == b.dim_ && a.t_ == b.t_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // z -> z^{-1} with coefficient conjugation (a ring anti-automorphism on
    // Hermitian symbols).
    LaurentPoly involute() const {
        LaurentPoly r(dim_);
        for (const auto& [k, v] : t_) r.t_.emplace(negate(k), coeff_conj(v));
        return r;
    }

    LaurentPoly shifted(const Offset& by) const {
        LaurentPoly r(dim_);
        for (const auto& [k, v] : t_) r.t_.emplace(add(k, by), v);
        return r;
    }

    template <class F>
    auto map(F f) const -> LaurentPoly<decltype(f(std::declval<C>()))> {
        LaurentPoly<decltype(f(std::declval<C>()))> r(dim_);
        for (const auto& [k, v] : t_) {
            auto w = f(v);
            if (!coeff_is_zero(w)) r.add_term(k, std::move(w));
        }
        return r;
    }

    int min_exponent(int axis) const {
        int m = 0;
        bool first = true;
        for (const auto& [k, v] : t_) {
            if (first || k[static_cast<size_t>(axis)] < m) m = k[static_cast<size_t>(axis)];
            first = false;
        }
        return m;
    }
    int max_exponent(int axis) const {
        int m = 0;
        bool first = true;
        for (const auto& [k, v] : t_) {
            if (first || k[static_cast<size_t>(axis)] > m) m = k[static_cast<size_t>(axis)];
            first = false;
        }
        return m;
    }

    // Leading term in graded-lex order.
    std::pair<Offset, C> leading_term() const {
        if (t_.empty()) throw error("leading term of zero polynomial");
        GradedLex less;
        auto best = t_.begin();
        for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
            if (less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

private:
    void check_dim(const LaurentPoly& b) const {
        if (dim_ != b.dim_) throw error("laurent dimension mismatch");
    }
    int dim_;
    Terms t_;
};

template <class C>
inline bool coeff_is_zero(const LaurentPoly<C>& p) {
    return p.is_zero();
}
template <class C>
inline LaurentPoly<C> coeff_conj(const LaurentPoly<C>& p) {
    return p.map([](const C& c) { return coeff_conj(c); });
}

// Exact quotient a / b; requires the division to be exact (used by the
// fraction-free determinant path).  Graded-lex is a group order, so leading
// terms multiply and the quotient is peeled one leading term at a time.
template <class C>
LaurentPoly<C> laurent_divide_exact(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
    if (b.is_zero()) throw error("laurent division by zero");
    LaurentPoly<C> rem = a, quo(a.dim());
    if (rem.is_zero()) return quo;
    auto [bk, bc] = b.leading_term();
    // For an exact quotient q, per-axis extrema are additive under products, so
    // supp(q) lies in the box below; leaving it proves the division inexact.
    std::vector<int> lo(static_cast<size_t>(a.dim())), hi(static_cast<size_t>(a.dim()));
    for (int r = 0; r < a.dim(); ++r) {
        lo[static_cast<size_t>(r)] = a.min_exponent(r) - b.min_exponent(r);
        hi[static_cast<size_t>(r)] = a.max_exponent(r) - b.max_exponent(r);
    }
    while (!rem.is_zero()) {
        auto [rk, rc] = rem.leading_term();
        Offset qk = sub(rk, bk);
        for (size_t r = 0; r < qk.size(); ++r)
            if (qk[r] < lo[r] || qk[r] > hi[r]) throw error("inexact laurent division");
        C q = rc / bc;
        LaurentPoly<C> t = LaurentPoly<C>::monomial(std::move(qk), std::move(q));
        quo += t;
        rem -= t * b;
    }
    return quo;
}

template <class C>
LaurentPoly<C> operator/(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
    return laurent_divide_exact(a, b);
}

using ZLaurent = LaurentPoly<Int>;
using QLaurent = LaurentPoly<Rational>;
using GLaurent = LaurentPoly<GaussianRational>;

inline std::complex<double> eval_unit(const GLaurent& p, const std::vector<double>& theta) {
    std::complex<double> acc(0, 0);
    constexpr double tau = 6.283185307179586476925286766559;
    for (const auto& [k, v] : p.terms()) {
        double phase = 0;
        for (size_t i = 0; i < k.size(); ++i) phase += theta[i] * k[i];
        acc += std::complex<double>(to_double(v.re), to_double(v.im)) *
               std::exp(std::complex<double>(0, tau * phase));
    }
    return acc;
}

std::string laurent_to_string(const GLaurent& p, const std::string& varbase);

}  // namespace flatband

#endif
