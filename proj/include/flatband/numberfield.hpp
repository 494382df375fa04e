#ifndef FLATBAND_NUMBERFIELD_HPP
#define FLATBAND_NUMBERFIELD_HPP

#include "flatband/algebraic.hpp"

#include <memory>
#include <string>

namespace flatband {

// Arithmetic in Q(lambda0), lambda0 a fixed real algebraic number, with an optional
// imaginary part, i.e. Q(lambda0)(i).  Elements are polynomial residues modulo a
// monic defining polynomial.  The defining polynomial may start out reducible (the
// partial factorization upstream is deliberate about that); whenever an inverse or
// zero test discovers a factor, the modulus is refined to the factor that keeps
// lambda0 as a root.  Refinement is a quotient-ring homomorphism fixing the
// evaluation at lambda0, so earlier results stay valid.  Not thread-safe.
class NumberField {
public:
    static std::shared_ptr<NumberField> make(const RealValue& v);

    bool is_rational_field() const { return modulus_.degree() == 1; }
    const QPoly& modulus() const { return modulus_; }
    ZPoly modulus_primitive() const { return primitive_part(modulus_); }
    RealValue root_value() const;
    double root_approx() const;

    QPoly reduce(const QPoly& p) const { return poly_mod(p, modulus_); }
    // True iff p(lambda0) == 0; may refine the modulus as a side effect.
    bool zero_at_root(const QPoly& p);
    // Inverse of p modulo the (possibly refined) modulus; throws if p(lambda0) == 0.
    QPoly invert_mod(const QPoly& p);

private:
    NumberField(QPoly m, Rational lo, Rational hi)
        : modulus_(std::move(m)), lo_(std::move(lo)), hi_(std::move(hi)) {}
    bool root_inside(const QPoly& factor) const;

    QPoly modulus_;  // monic
    Rational lo_, hi_;
};

using FieldPtr = std::shared_ptr<NumberField>;

// Element of Q(lambda0)(i).  A null field handle marks a plain rational constant,
// compatible with every field.
class NFElem {
public:
    NFElem() = default;
    NFElem(int n) : re_(QPoly::constant(Rational(n))) {}          // NOLINT(google-explicit-constructor)
    NFElem(const Rational& q) : re_(QPoly::constant(q)) {}        // NOLINT(google-explicit-constructor)
    NFElem(const GaussianRational& g)                             // NOLINT(google-explicit-constructor)
        : re_(QPoly::constant(g.re)), im_(QPoly::constant(g.im)) {}
    NFElem(FieldPtr f, QPoly re, QPoly im = QPoly());
    static NFElem generator(const FieldPtr& f) { return NFElem(f, QPoly::variable()); }

    const FieldPtr& field() const { return f_; }
    const QPoly& re_poly() const { return re_; }
    const QPoly& im_poly() const { return im_; }

    // Root-aware zero test; refines the field and canonicalizes the representation.
    bool is_zero() const;
    bool is_real() const;

    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b);
    NFElem& operator+=(const NFElem& b) { return *this = *this + b; }
    NFElem& operator-=(const NFElem& b) { return *this = *this - b; }
    NFElem& operator*=(const NFElem& b) { return *this = *this * b; }
    friend bool operator==(const NFElem& a, const NFElem& b) { return (a - b).is_zero(); }
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    NFElem inverse() const;
    NFElem conjugate() const { return NFElem(f_, re_, -im_); }

    // The Gaussian-rational value of a constant element (throws otherwise).
    GaussianRational constant_value() const;

    // Numeric image under the real embedding at lambda0.
    double approx_re() const;
    double approx_im() const;

    std::string to_string() const;

private:
    static FieldPtr pick_field(const NFElem& a, const NFElem& b);
    mutable FieldPtr f_;
    mutable QPoly re_, im_;
};

// Kernel basis of a square matrix over Q(lambda0)(i) by Gaussian elimination.
std::vector<std::vector<NFElem>> nf_kernel_basis(std::vector<std::vector<NFElem>> m);

inline bool coeff_is_zero(const NFElem& c) { return c.is_zero(); }
inline NFElem coeff_conj(const NFElem& c) { return c.conjugate(); }

}  // namespace flatband

#endif
