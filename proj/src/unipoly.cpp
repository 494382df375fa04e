#include "flatband/unipoly.hpp"

#include <sstream>

namespace flatband {

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p) {
    if (p.is_zero()) throw error("squarefree decomposition of zero polynomial");
    std::vector<std::pair<ZPoly, int>> out;
    QPoly f = make_monic(to_qpoly(p));
    if (f.degree() == 0) return out;
    // Yun's algorithm.
    QPoly fp = f.derivative();
    QPoly a = qpoly_gcd(f, fp);
    QPoly b = divide_exact(f, a);
    QPoly c = divide_exact(fp, a);
    QPoly d = c - b.derivative();
    for (int i = 1; !(b.degree() == 0); ++i) {
        QPoly g = qpoly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(primitive_part(g), i);
        b = divide_exact(b, g);
        c = divide_exact(d, g);
        d = c - b.derivative();
    }
    return out;
}

namespace {

// Chain members may only be rescaled by positive constants, or the sign
// variations go wrong.
QPoly scale_positive(const QPoly& p) {
    if (p.is_zero()) return p;
    Rational l = rat_abs(p.leading());
    return p.map([&](const Rational& c) { return Rational(c / l); });
}

std::vector<QPoly> sturm_sequence(const ZPoly& p) {
    std::vector<QPoly> seq;
    seq.push_back(make_monic(to_qpoly(p)));
    QPoly d = seq[0].derivative();
    if (!d.is_zero()) seq.push_back(scale_positive(d));
    while (seq.back().degree() > 0) {
        QPoly r = poly_mod(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(scale_positive(-r));
    }
    return seq;
}

int sign_variations_at(const std::vector<QPoly>& seq, const Rational& x) {
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        int s = sign_of(q.evaluate(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int sign_variations_at_inf(const std::vector<QPoly>& seq, int dir) {
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        if (q.is_zero()) continue;
        int s = sign_of(q.leading());
        if (dir < 0 && q.degree() % 2 == 1) s = -s;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace

int sturm_count(const ZPoly& p, const Rational& a, const Rational& b) {
    auto seq = sturm_sequence(p);
    return sign_variations_at(seq, a) - sign_variations_at(seq, b);
}

int sturm_count_all(const ZPoly& p) {
    auto seq = sturm_sequence(p);
    return sign_variations_at_inf(seq, -1) - sign_variations_at_inf(seq, +1);
}

Rational root_bound(const ZPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Int m = 0;
    for (const auto& c : p.coeffs()) m = std::max(m, int_abs(c));
    return Rational(1) + Rational(m, int_abs(p.leading()));
}

namespace {

template <class P>
std::string poly_to_string_impl(const P& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        auto c = p.coeff(k);
        if (coeff_is_zero(c)) continue;
        bool neg = sign_of(c) < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        auto a = neg ? decltype(c)(-c) : c;
        bool unit = (a == 1);
        if (k == 0) {
            os << rat_to_string(Rational(a));
        } else {
            if (!unit) os << rat_to_string(Rational(a)) << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

}  // namespace

std::string poly_to_string(const ZPoly& p, const std::string& var) { return poly_to_string_impl(p, var); }
std::string poly_to_string(const QPoly& p, const std::string& var) { return poly_to_string_impl(p, var); }

}  // namespace flatband
