#ifndef FLATBAND_ALGEBRAIC_HPP
#define FLATBAND_ALGEBRAIC_HPP

#include "flatband/unipoly.hpp"

#include <string>
#include <variant>
#include <vector>

namespace flatband {

// A real algebraic number: a primitive integer defining polynomial together with a
// rational interval (lo, hi) isolating exactly one of its real roots.  The defining
// polynomial is squarefree and free of rational roots; it is irreducible whenever the
// partial factorization in isolate_real_roots managed to split it (always for degree
// <= 2), and may stay reducible for higher degrees.  All comparisons below remain
// exact regardless, via gcd + interval refinement.
class AlgebraicNumber {
public:
    AlgebraicNumber(ZPoly defining, Rational lo, Rational hi);

    const ZPoly& minpoly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    // Halve the isolating interval until hi - lo <= width.
    void refine_to(const Rational& width) const;
    double approx() const;

    bool equals(const AlgebraicNumber& other) const;
    // Strict order of the represented real numbers.
    bool less_than(const AlgebraicNumber& other) const;
    int compare_rational(const Rational& q) const;  // -1, 0, +1 for this <,=,> q

    // All roots of the defining polynomial real (and the polynomial monic up to sign).
    bool is_totally_real_algebraic_integer() const;

    std::string to_string() const;

private:
    ZPoly poly_;
    mutable Rational lo_, hi_;
};

// Exact real value: rational or algebraic.  The workhorse scalar for reported
// flat bands and exact spectra.
class RealValue {
public:
    RealValue() : v_(Rational(0)) {}
    RealValue(Rational q) : v_(std::move(q)) {}              // NOLINT(google-explicit-constructor)
    RealValue(AlgebraicNumber a) : v_(std::move(a)) {}       // NOLINT(google-explicit-constructor)
    RealValue(int n) : v_(Rational(n)) {}                    // NOLINT(google-explicit-constructor)

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const AlgebraicNumber& algebraic() const { return std::get<AlgebraicNumber>(v_); }

    bool equals(const RealValue& other) const;
    bool less_than(const RealValue& other) const;
    double approx() const;
    // Defining polynomial: x - q for rationals (scaled primitive), else the algebraic one.
    ZPoly minpoly() const;
    bool is_totally_real_algebraic_integer() const;
    std::string to_string() const;

private:
    std::variant<Rational, AlgebraicNumber> v_;
};

struct IsolatedRoot {
    RealValue value;
    int multiplicity = 1;
};

// Real roots of p with multiplicities, ascending.  Rational roots are returned
// exactly; irrational ones as AlgebraicNumber.
std::vector<IsolatedRoot> isolate_real_roots(const ZPoly& p);

// v + c for rational c (Taylor shift of the defining polynomial).
RealValue shift_value(const RealValue& v, const Rational& c);
// a * v for rational a (a == 0 collapses to the rational 0).
RealValue scale_value(const RealValue& v, const Rational& a);

// Sorted deduplication helpers for sets of exact values.
void sort_values(std::vector<RealValue>& vals);
bool contains_value(const std::vector<RealValue>& vals, const RealValue& v);
std::vector<RealValue> dedup_values(std::vector<RealValue> vals);

}  // namespace flatband

#endif
