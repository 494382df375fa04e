#ifndef FLATBAND_RATIONAL_HPP
#define FLATBAND_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace flatband {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline int sign_of(const Rational& q) { return q.sign(); }
inline int sign_of(const Int& n) { return n.sign(); }

inline Int int_abs(const Int& n) { return boost::multiprecision::abs(n); }
inline Rational rat_abs(const Rational& q) { return boost::multiprecision::abs(q); }

// Floor of a rational, as an integer.
inline Int rat_floor(const Rational& q) {
    Int n = num(q), d = den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}
inline Int rat_ceil(const Rational& q) { return -rat_floor(-q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact integer square root when the argument is a perfect square.
inline std::optional<Int> perfect_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// "p/q" in lowest terms, "/q" omitted for integers.
inline std::string rat_to_string(const Rational& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw error("rational with zero denominator: " + s);
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw error("malformed rational: " + s);
    }
}

// Gaussian rational a + b*i.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw error("division by zero Gaussian rational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& g) { return {g.re, -g.im}; }

inline std::string gaussian_to_string(const GaussianRational& g) {
    if (g.im == 0) return rat_to_string(g.re);
    std::string s;
    if (g.re != 0) s += rat_to_string(g.re);
    if (g.im > 0 && !s.empty()) s += "+";
    if (g.im == -1) s += "-";
    else if (g.im != 1) s += rat_to_string(g.im) + "*";
    s += "i";
    return s;
}

// Coefficient-concept helpers shared by the polynomial templates.
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const Int& c) { return c == 0; }
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline Rational coeff_conj(const Rational& c) { return c; }
inline Int coeff_conj(const Int& c) { return c; }
inline GaussianRational coeff_conj(const GaussianRational& c) { return conj(c); }

}  // namespace flatband

#endif
