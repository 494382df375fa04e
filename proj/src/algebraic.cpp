#include "flatband/algebraic.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace flatband {

namespace {

std::vector<Int> positive_divisors(Int n) {
    n = int_abs(n);
    std::vector<Int> out;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Rational roots of a squarefree primitive polynomial; roots are divided out.
std::vector<Rational> extract_rational_roots(ZPoly& f) {
    std::vector<Rational> roots;
    if (f.degree() <= 0) return roots;
    if (f.coeff(0) == 0) {
        roots.emplace_back(0);
        f = primitive_part(divide_exact(to_qpoly(f), QPoly({Rational(0), Rational(1)})));
    }
    while (f.degree() == 1) {
        roots.emplace_back(Rational(-f.coeff(0), f.coeff(1)));
        f = ZPoly::constant(1);
        return roots;
    }
    if (f.degree() < 2) return roots;
    auto ps = positive_divisors(f.coeff(0));
    auto qs = positive_divisors(f.leading());
    bool changed = true;
    while (changed && f.degree() >= 1) {
        changed = false;
        for (const Int& p : ps) {
            for (const Int& q : qs) {
                if (int_gcd(p, q) != 1) continue;
                for (int s : {1, -1}) {
                    Rational cand(s * p, q);
                    if (sign_at(f, cand) == 0) {
                        roots.push_back(cand);
                        f = primitive_part(divide_exact(to_qpoly(f), QPoly({-cand, Rational(1)})));
                        changed = true;
                        if (f.degree() <= 1) {
                            auto rest = extract_rational_roots(f);
                            roots.insert(roots.end(), rest.begin(), rest.end());
                            return roots;
                        }
                    }
                }
            }
        }
    }
    return roots;
}

bool divides_monic(const ZPoly& h, const ZPoly& d, ZPoly* quotient) {
    // Synthetic division of monic h by monic d over Z.
    std::vector<Int> rem(h.coeffs().begin(), h.coeffs().end());
    int dh = h.degree(), dd = d.degree();
    if (dh < dd) return false;
    std::vector<Int> quo(static_cast<size_t>(dh - dd) + 1, Int(0));
    for (int k = dh; k >= dd; --k) {
        Int lead = rem[static_cast<size_t>(k)];
        if (lead == 0) continue;
        quo[static_cast<size_t>(k - dd)] = lead;
        for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(k - dd + j)] -= lead * d.coeff(j);
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    if (quotient) *quotient = ZPoly(std::move(quo));
    return true;
}

// Partial splitting of a monic squarefree integer polynomial without rational
// roots: search for monic quadratic (then cubic) integer divisors.  Gauss'
// lemma guarantees monic integer cofactors, so constant terms divide.
void split_monic(const ZPoly& h, std::vector<ZPoly>& out) {
    int n = h.degree();
    if (n <= 3) {
        out.push_back(h);
        return;
    }
    Rational bq = root_bound(h);
    Int B = rat_ceil(bq);
    auto divs = positive_divisors(h.coeff(0));
    for (int deg = 2; deg <= std::min(3, n / 2); ++deg) {
        Int abound = B * deg;
        for (const Int& c0a : divs) {
            for (int s : {1, -1}) {
                Int c0 = s * c0a;
                if (deg == 2) {
                    for (Int a = -abound; a <= abound; ++a) {
                        ZPoly d({c0, a, Int(1)});
                        ZPoly q;
                        if (divides_monic(h, d, &q)) {
                            split_monic(d, out);
                            split_monic(q, out);
                            return;
                        }
                    }
                } else {
                    Int bbound = B * B * 3;
                    for (Int a = -abound; a <= abound; ++a) {
                        for (Int b = -bbound; b <= bbound; ++b) {
                            ZPoly d({c0, b, a, Int(1)});
                            ZPoly q;
                            if (divides_monic(h, d, &q)) {
                                split_monic(d, out);
                                split_monic(q, out);
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
    out.push_back(h);
}

std::vector<ZPoly> split_factors(const ZPoly& h) {
    std::vector<ZPoly> out;
    if (h.degree() <= 2) {
        out.push_back(h);
        return out;
    }
    if (int_abs(h.leading()) == 1 && h.degree() <= 6) {
        ZPoly m = h.leading() < 0 ? ZPoly(-h) : h;
        split_monic(m, out);
        return out;
    }
    out.push_back(h);
    return out;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(ZPoly defining, Rational lo, Rational hi)
    : poly_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (poly_.is_zero() || poly_.degree() < 1) throw error("algebraic number needs a nonconstant polynomial");
    if (!(lo_ < hi_)) throw error("algebraic number needs a nonempty open interval");
    if (sign_at(poly_, lo_) == 0 || sign_at(poly_, hi_) == 0)
        throw error("isolating interval endpoints must not be roots");
    if (sturm_count(poly_, lo_, hi_) != 1) throw error("interval does not isolate exactly one root");
}

void AlgebraicNumber::refine_to(const Rational& width) const {
    while (hi_ - lo_ > width) {
        Rational mid = (lo_ + hi_) / 2;
        int sm = sign_at(poly_, mid);
        if (sm == 0) throw error("refinement hit an unreduced rational root");
        if (sign_at(poly_, lo_) * sm < 0)
            hi_ = mid;
        else
            lo_ = mid;
    }
}

double AlgebraicNumber::approx() const {
    refine_to(Rational(1, Int("1000000000000")));
    return to_double((lo_ + hi_) / 2);
}

bool AlgebraicNumber::equals(const AlgebraicNumber& other) const {
    Rational l = std::max(lo_, other.lo_), h = std::min(hi_, other.hi_);
    if (!(l < h)) return false;
    ZPoly g = zpoly_gcd(poly_, other.poly_);
    if (g.degree() < 1) return false;
    if (sign_at(g, l) == 0 || sign_at(g, h) == 0) {
        // Intersection endpoints are endpoints of an isolating interval, hence
        // non-roots of the respective polynomial; a root of g here would
        // contradict g dividing both.
        throw error("inconsistent isolating intervals");
    }
    return sturm_count(g, l, h) == 1;
}

bool AlgebraicNumber::less_than(const AlgebraicNumber& other) const {
    if (equals(other)) return false;
    while (std::max(lo_, other.lo_) < std::min(hi_, other.hi_)) {
        refine_to((hi_ - lo_) / 2);
        other.refine_to((other.hi_ - other.lo_) / 2);
    }
    return hi_ <= other.lo_;
}

int AlgebraicNumber::compare_rational(const Rational& q) const {
    if (sign_at(poly_, q) == 0 && lo_ < q && q < hi_) return 0;
    while (lo_ < q && q < hi_) refine_to((hi_ - lo_) / 2);
    if (q <= lo_) return 1;
    return -1;
}

bool AlgebraicNumber::is_totally_real_algebraic_integer() const {
    if (int_abs(poly_.leading()) != 1) return false;
    return sturm_count_all(poly_) == poly_.degree();
}

std::string AlgebraicNumber::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", approx());
    std::ostringstream os;
    os << buf << " (root of " << poly_to_string(poly_, "x") << ")";
    return os.str();
}

bool RealValue::equals(const RealValue& other) const {
    if (is_rational() && other.is_rational()) return rational() == other.rational();
    if (is_rational()) return other.algebraic().compare_rational(rational()) == 0;
    if (other.is_rational()) return algebraic().compare_rational(other.rational()) == 0;
    return algebraic().equals(other.algebraic());
}

bool RealValue::less_than(const RealValue& other) const {
    if (is_rational() && other.is_rational()) return rational() < other.rational();
    if (is_rational()) return other.algebraic().compare_rational(rational()) > 0;
    if (other.is_rational()) return algebraic().compare_rational(other.rational()) < 0;
    return algebraic().less_than(other.algebraic());
}

double RealValue::approx() const {
    return is_rational() ? to_double(rational()) : algebraic().approx();
}

ZPoly RealValue::minpoly() const {
    if (is_rational()) return ZPoly({-num(rational()), den(rational())});
    return algebraic().minpoly();
}

bool RealValue::is_totally_real_algebraic_integer() const {
    if (is_rational()) return den(rational()) == 1;
    return algebraic().is_totally_real_algebraic_integer();
}

std::string RealValue::to_string() const {
    return is_rational() ? rat_to_string(rational()) : algebraic().to_string();
}

std::vector<IsolatedRoot> isolate_real_roots(const ZPoly& p) {
    if (p.is_zero()) throw error("cannot isolate roots of the zero polynomial");
    std::vector<IsolatedRoot> out;
    for (auto& [factor, mult] : squarefree_decomposition(p)) {
        ZPoly f = factor;
        for (const Rational& r : extract_rational_roots(f)) out.push_back({RealValue(r), mult});
        if (f.degree() < 1) continue;
        for (const ZPoly& g : split_factors(f)) {
            if (sturm_count_all(g) == 0) continue;
            Rational b = root_bound(g);
            // Bisect until each interval isolates one root; endpoints never hit
            // roots because g has no rational roots.
            std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
            while (!stack.empty()) {
                auto [lo, hi] = stack.back();
                stack.pop_back();
                int cnt = sturm_count(g, lo, hi);
                if (cnt == 0) continue;
                if (cnt == 1) {
                    out.push_back({RealValue(AlgebraicNumber(g, lo, hi)), mult});
                    continue;
                }
                Rational mid = (lo + hi) / 2;
                stack.push_back({lo, mid});
                stack.push_back({mid, hi});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.value.less_than(b.value); });
    return out;
}

RealValue shift_value(const RealValue& v, const Rational& c) {
    if (v.is_rational()) return RealValue(v.rational() + c);
    const AlgebraicNumber& a = v.algebraic();
    // p(x - c) by synthetic Taylor shift.
    QPoly p = to_qpoly(a.minpoly());
    int n = p.degree();
    std::vector<Rational> cf(p.coeffs().begin(), p.coeffs().end());
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) cf[static_cast<size_t>(j)] += -c * cf[static_cast<size_t>(j) + 1];
    ZPoly q = primitive_part(QPoly(std::move(cf)));
    return RealValue(AlgebraicNumber(q, a.lo() + c, a.hi() + c));
}

RealValue scale_value(const RealValue& v, const Rational& a) {
    if (a == 0) return RealValue(Rational(0));
    if (v.is_rational()) return RealValue(v.rational() * a);
    const AlgebraicNumber& x = v.algebraic();
    // q(y) = a^n p(y/a), integer-primitivized.
    QPoly p = to_qpoly(x.minpoly());
    int n = p.degree();
    std::vector<Rational> cf(static_cast<size_t>(n) + 1);
    Rational pw(1);
    for (int k = n; k >= 0; --k) {
        cf[static_cast<size_t>(k)] = p.coeff(k) * pw;
        pw *= a;
    }
    ZPoly q = primitive_part(QPoly(std::move(cf)));
    Rational lo = x.lo() * a, hi = x.hi() * a;
    if (a < 0) std::swap(lo, hi);
    return RealValue(AlgebraicNumber(q, lo, hi));
}

void sort_values(std::vector<RealValue>& vals) {
    std::sort(vals.begin(), vals.end(), [](const RealValue& a, const RealValue& b) { return a.less_than(b); });
}

bool contains_value(const std::vector<RealValue>& vals, const RealValue& v) {
    for (const auto& x : vals)
        if (x.equals(v)) return true;
    return false;
}

std::vector<RealValue> dedup_values(std::vector<RealValue> vals) {
    sort_values(vals);
    std::vector<RealValue> out;
    for (auto& v : vals)
        if (out.empty() || !out.back().equals(v)) out.push_back(std::move(v));
    return out;
}

}  // namespace flatband
