#include "flatband/numberfield.hpp"

#include <sstream>

namespace flatband {

FieldPtr NumberField::make(const RealValue& v) {
    if (v.is_rational()) {
        const Rational& q = v.rational();
        QPoly m({-q, Rational(1)});
        return FieldPtr(new NumberField(std::move(m), q - 1, q + 1));
    }
    const AlgebraicNumber& a = v.algebraic();
    QPoly m = make_monic(to_qpoly(a.minpoly()));
    return FieldPtr(new NumberField(std::move(m), a.lo(), a.hi()));
}

RealValue NumberField::root_value() const {
    if (is_rational_field()) return RealValue(-modulus_.coeff(0));
    return RealValue(AlgebraicNumber(primitive_part(modulus_), lo_, hi_));
}

double NumberField::root_approx() const {
    if (is_rational_field()) return to_double(-modulus_.coeff(0));
    return AlgebraicNumber(primitive_part(modulus_), lo_, hi_).approx();
}

bool NumberField::root_inside(const QPoly& factor) const {
    ZPoly g = primitive_part(factor);
    if (g.degree() < 1) return false;
    if (sign_at(g, lo_) == 0 || sign_at(g, hi_) == 0) throw error("number field interval degenerated");
    return sturm_count(g, lo_, hi_) == 1;
}

bool NumberField::zero_at_root(const QPoly& p) {
    QPoly x = reduce(p);
    if (x.is_zero()) return true;
    if (is_rational_field()) return false;
    QPoly g = qpoly_gcd(x, modulus_);
    if (g.degree() < 1) return false;
    if (root_inside(g)) {
        modulus_ = g;
        return true;
    }
    modulus_ = make_monic(divide_exact(modulus_, g));
    return false;
}

QPoly NumberField::invert_mod(const QPoly& p) {
    for (;;) {
        QPoly x = reduce(p);
        if (x.is_zero()) throw error("number field division by zero");
        // Extended Euclid: s*x + t*m = g.
        QPoly r0 = modulus_, r1 = x;
        QPoly s0, s1 = QPoly::constant(Rational(1));
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            QPoly s2 = s0 - q * s1;
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if (r0.degree() == 0) {
            Rational c = r0.coeff(0);
            return reduce(s0.map([&](const Rational& v) { return Rational(v / c); }));
        }
        // Nontrivial gcd splits the modulus; keep the factor that holds lambda0.
        QPoly g = make_monic(r0);
        if (root_inside(g))
            modulus_ = g;
        else
            modulus_ = make_monic(divide_exact(modulus_, g));
    }
}

NFElem::NFElem(FieldPtr f, QPoly re, QPoly im) : f_(std::move(f)), re_(std::move(re)), im_(std::move(im)) {
    if (f_) {
        re_ = f_->reduce(re_);
        im_ = f_->reduce(im_);
    } else if (re_.degree() > 0 || im_.degree() > 0) {
        throw error("field-free element must be constant");
    }
}

FieldPtr NFElem::pick_field(const NFElem& a, const NFElem& b) {
    if (a.f_ && b.f_ && a.f_ != b.f_) throw error("mixing elements of different number fields");
    return a.f_ ? a.f_ : b.f_;
}

bool NFElem::is_zero() const {
    if (!f_) return re_.is_zero() && im_.is_zero();
    bool zr = f_->zero_at_root(re_);
    bool zi = f_->zero_at_root(im_);
    re_ = f_->reduce(re_);
    im_ = f_->reduce(im_);
    return zr && zi;
}

bool NFElem::is_real() const {
    if (!f_) return im_.is_zero();
    bool zi = f_->zero_at_root(im_);
    im_ = f_->reduce(im_);
    return zi;
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    return NFElem(NFElem::pick_field(a, b), a.re_ + b.re_, a.im_ + b.im_);
}
NFElem operator-(const NFElem& a, const NFElem& b) {
    return NFElem(NFElem::pick_field(a, b), a.re_ - b.re_, a.im_ - b.im_);
}
NFElem operator-(const NFElem& a) { return NFElem(a.f_, -a.re_, -a.im_); }
NFElem operator*(const NFElem& a, const NFElem& b) {
    return NFElem(NFElem::pick_field(a, b), a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}
NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

NFElem NFElem::inverse() const {
    if (!f_) {
        GaussianRational g(re_.coeff(0), im_.coeff(0));
        if (g.is_zero()) throw error("division by zero");
        GaussianRational inv = GaussianRational(1) / g;
        return NFElem(inv);
    }
    if (f_->zero_at_root(im_)) {
        QPoly r = f_->invert_mod(re_);
        return NFElem(f_, std::move(r));
    }
    // (re - i*im) / (re^2 + im^2); the norm is nonzero at a real root unless
    // both parts vanish there.
    QPoly norm = re_ * re_ + im_ * im_;
    QPoly ninv = f_->invert_mod(norm);
    return NFElem(f_, re_ * ninv, -(im_ * ninv));
}

GaussianRational NFElem::constant_value() const {
    QPoly re = f_ ? f_->reduce(re_) : re_;
    QPoly im = f_ ? f_->reduce(im_) : im_;
    if (re.degree() > 0 || im.degree() > 0) throw error("element is not a rational constant");
    return GaussianRational(re.coeff(0), im.coeff(0));
}

std::vector<std::vector<NFElem>> nf_kernel_basis(std::vector<std::vector<NFElem>> m) {
    const int n = m.empty() ? 0 : static_cast<int>(m[0].size());
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_of_col(static_cast<size_t>(n), -1);
    int row = 0;
    for (int col = 0; col < n && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(pr)]);
        NFElem inv = m[static_cast<size_t>(row)][static_cast<size_t>(col)].inverse();
        for (int j = 0; j < n; ++j)
            m[static_cast<size_t>(row)][static_cast<size_t>(j)] = m[static_cast<size_t>(row)][static_cast<size_t>(j)] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            NFElem f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                m[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * m[static_cast<size_t>(row)][static_cast<size_t>(j)];
        }
        pivot_of_col[static_cast<size_t>(col)] = row;
        ++row;
    }
    std::vector<std::vector<NFElem>> basis;
    for (int col = 0; col < n; ++col) {
        if (pivot_of_col[static_cast<size_t>(col)] >= 0) continue;
        std::vector<NFElem> v(static_cast<size_t>(n));
        v[static_cast<size_t>(col)] = NFElem(1);
        for (int c2 = 0; c2 < n; ++c2) {
            int pr = pivot_of_col[static_cast<size_t>(c2)];
            if (pr >= 0) v[static_cast<size_t>(c2)] = -m[static_cast<size_t>(pr)][static_cast<size_t>(col)];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

double NFElem::approx_re() const {
    if (!f_) return to_double(re_.coeff(0));
    double x = f_->root_approx();
    double acc = 0;
    for (int k = re_.degree(); k >= 0; --k) acc = acc * x + to_double(re_.coeff(k));
    return acc;
}

double NFElem::approx_im() const {
    if (!f_) return to_double(im_.coeff(0));
    double x = f_->root_approx();
    double acc = 0;
    for (int k = im_.degree(); k >= 0; --k) acc = acc * x + to_double(im_.coeff(k));
    return acc;
}

std::string NFElem::to_string() const {
    std::ostringstream os;
    if (im_.is_zero()) {
        os << poly_to_string(re_, "a");
    } else {
        os << "(" << poly_to_string(re_, "a") << ") + (" << poly_to_string(im_, "a") << ")*i";
    }
    return os.str();
}

}  // namespace flatband
