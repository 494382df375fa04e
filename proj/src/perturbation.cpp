#include "flatband/perturbation.hpp"

#include "flatband/det.hpp"
#include "flatband/numberfield.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace flatband {

using nlohmann::ordered_json;

QPotentialPoly CoefficientSystem::at(const Offset& r) const {
    if (static_cast<int>(r.size()) != dim) throw error("coefficient exponent arity mismatch");
    auto it = coeffs.find(r);
    return it == coeffs.end() ? QPotentialPoly(nu + 1) : it->second;
}

std::vector<Offset> CoefficientSystem::exponents() const {
    std::vector<Offset> out;
    for (const auto& [k, p] : coeffs) out.push_back(k);
    GradedLex less;
    std::sort(out.begin(), out.end(), [&](const Offset& a, const Offset& b) { return less(b, a); });
    return out;
}

CoefficientSystem coefficient_system(const PeriodicGraph& g) {
    require_valid(g);
    const int vars = g.nu + 1;  // Q_0..Q_{nu-1}, lambda
    using R = QPotentialPoly;
    using M = LaurentPoly<R>;
    auto qvar = [&](int i) {
        Offset e(static_cast<size_t>(vars), 0);
        e[static_cast<size_t>(i)] = 1;
        return R::monomial(e, GaussianRational(1));
    };
    std::vector<std::vector<M>> m(static_cast<size_t>(g.nu), std::vector<M>(static_cast<size_t>(g.nu), M(g.dimension)));
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nu; ++j) {
            M e(g.dimension);
            for (const auto& [k, w] : g.index_set(i, j)) e.add_term(k, R::constant(vars, w));
            if (i == j) {
                R diag = qvar(i) - qvar(g.nu);
                if (g.potential[static_cast<size_t>(i)] != 0)
                    diag += R::constant(vars, GaussianRational(g.potential[static_cast<size_t>(i)]));
                e.add_term(zero_offset(g.dimension), diag);
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    M det = laurent_matrix_det(m, g.dimension, R::constant(vars, GaussianRational(1)));
    CoefficientSystem cs;
    cs.dim = g.dimension;
    cs.nu = g.nu;
    for (const auto& [k, p] : det.terms()) cs.coeffs.emplace(k, p);
    return cs;
}

std::string qpoly_to_string(const QPotentialPoly& p, int nu) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Offset, GaussianRational>> terms(p.terms().begin(), p.terms().end());
    GradedLex less;
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return less(b.first, a.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        bool neg = c.is_real() && c.re < 0;
        GaussianRational a = neg ? -c : c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        std::string mono;
        for (int i = 0; i <= nu; ++i) {
            if (e[static_cast<size_t>(i)] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (i == nu) ? "lambda" : ("Q" + std::to_string(i));
            if (e[static_cast<size_t>(i)] != 1) mono += "^" + std::to_string(e[static_cast<size_t>(i)]);
        }
        std::string cs = gaussian_to_string(a);
        if (mono.empty())
            os << cs;
        else if (a == GaussianRational(1))
            os << mono;
        else
            os << (a.is_real() ? cs : "(" + cs + ")") << "*" << mono;
        first = false;
    }
    return os.str();
}

std::string coefficient_system_to_json(const CoefficientSystem& cs) {
    ordered_json j;
    j["dimension"] = cs.dim;
    j["nu"] = cs.nu;
    j["coefficients"] = ordered_json::array();
    for (const auto& r : cs.exponents()) {
        ordered_json jc;
        jc["z_exponent"] = r;
        ordered_json terms = ordered_json::array();
        const auto& p = cs.coeffs.at(r);
        for (const auto& [e, c] : p.terms()) {
            ordered_json t;
            t["monomial"] = e;
            t["re"] = rat_to_string(c.re);
            t["im"] = rat_to_string(c.im);
            terms.push_back(t);
        }
        jc["terms"] = terms;
        jc["pretty"] = qpoly_to_string(p, cs.nu);
        j["coefficients"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::optional<Offset> empty_locus_certificate(const CoefficientSystem& cs) {
    for (const auto& r : cs.exponents()) {
        if (is_zero_offset(r)) continue;
        const auto& p = cs.coeffs.at(r);
        if (p.is_zero()) continue;
        if (p.term_count() == 1) {
            auto [e, c] = *p.terms().begin();
            if (is_zero_offset(e) && !c.is_zero()) return r;
        }
    }
    return std::nullopt;
}

namespace {

// Affine data of a nontrivial nu=2 coefficient: m + d0 (Q0-l) + d1 (Q1-l).
struct AffineCoeff {
    Rational m;
    int d0 = 0, d1 = 0;
};

AffineCoeff decompose_nu2(const QPotentialPoly& p) {
    // Exponent axes: Q0, Q1, lambda.
    AffineCoeff a;
    Rational cQ0(0), cQ1(0), cL(0);
    for (const auto& [e, c] : p.terms()) {
        if (!c.is_real()) throw error("nu=2 locus requires unit weights (real coefficients)");
        int total = e[0] + e[1] + e[2];
        if (total == 0) {
            a.m = c.re;
        } else if (total == 1 && e[0] == 1) {
            cQ0 = c.re;
        } else if (total == 1 && e[1] == 1) {
            cQ1 = c.re;
        } else if (total == 1 && e[2] == 1) {
            cL = c.re;
        } else {
            throw error("coefficient is not affine in (Q, lambda)");
        }
    }
    if (cQ0 != 0 && cQ0 != 1) throw error("unexpected affine coefficient");
    if (cQ1 != 0 && cQ1 != 1) throw error("unexpected affine coefficient");
    a.d0 = cQ0 == 1 ? 1 : 0;
    a.d1 = cQ1 == 1 ? 1 : 0;
    if (cL != -(a.d0 + a.d1)) throw error("coefficient is not of the form m + d0(Q0-l) + d1(Q1-l)");
    return a;
}

}  // namespace

Nu2Locus nu2_locus(const PeriodicGraph& g) {
    if (g.nu != 2) throw error("nu2_locus needs nu = 2");
    for (const auto& e : g.edges)
        if (e.weight != GaussianRational(1)) throw error("nu2_locus requires unit weights");
    PeriodicGraph base = with_potential(g, {Rational(0), Rational(0)});
    CoefficientSystem cs = coefficient_system(base);

    Nu2Locus locus;
    if (auto cert = empty_locus_certificate(cs)) {
        locus.certificate = cert;
        return locus;
    }

    // Reference coefficient: first nontrivial p_r, r != 0, in descending order.
    std::optional<AffineCoeff> ref;
    std::vector<AffineCoeff> others;
    Rational n_const(0);
    for (const auto& r : cs.exponents()) {
        const auto& p = cs.coeffs.at(r);
        if (is_zero_offset(r)) {
            // p0 = n + (Q0 - l)(Q1 - l); recover n as the constant term.
            n_const = p.coeff(Offset{0, 0, 0}).re;
            continue;
        }
        if (p.is_zero()) continue;
        AffineCoeff a = decompose_nu2(p);
        if (a.d0 + a.d1 == 0) continue;  // constants were handled by the certificate
        if (!ref)
            ref = a;
        else
            others.push_back(a);
    }
    if (!ref) throw error("no nontrivial affine coefficient found (disconnected input?)");

    // With s = d0+d1 and u = Q0 - Q1:
    //   Q0 - l = (d1 u - m) / s,   Q1 - l = (-d0 u - m) / s.
    // Every other coefficient and p0 become univariate constraints in u.
    const Rational s(ref->d0 + ref->d1);
    const Rational m = ref->m;
    std::vector<QPoly> constraints;
    for (const auto& a : others) {
        // m' s + d0' (d1 u - m) + d1' (-d0 u - m) = 0
        Rational lin = Rational(a.d0) * ref->d1 - Rational(a.d1) * ref->d0;
        Rational cst = a.m * s - m * (a.d0 + a.d1);
        constraints.push_back(QPoly({cst, lin}));
    }
    // p0: n s^2 + (d1 u - m)(-d0 u - m) = 0
    {
        Rational c2 = -Rational(ref->d1) * ref->d0;
        Rational c1 = m * (Rational(ref->d0) - ref->d1);
        Rational c0 = n_const * s * s + m * m;
        constraints.push_back(QPoly({c0, c1, c2}));
    }

    // Intersect the constraint roots exactly.
    ZPoly acc;
    for (const auto& c : constraints) {
        if (c.is_zero()) continue;
        ZPoly zc = primitive_part(c);
        if (zc.degree() == 0) return locus;  // inconsistent: empty locus
        acc = acc.is_zero() ? zc : zpoly_gcd(acc, zc);
        if (acc.degree() == 0) return locus;
    }
    if (acc.is_zero()) throw error("nu=2 constraint system degenerated");

    for (const auto& root : isolate_real_roots(acc)) {
        // t = lambda - Q0 = (m - d1 u) / s.
        RealValue u = root.value;
        RealValue t = u.is_rational()
                          ? RealValue((m - Rational(ref->d1) * u.rational()) / s)
                          : shift_value(scale_value(u, -Rational(ref->d1) / s), m / s);
        // Re-verify along the line: every coefficient is constant there.
        FieldPtr field = NumberField::make(u);
        NFElem uu = NFElem::generator(field);
        NFElem tt = (NFElem(m) - NFElem(Rational(ref->d1)) * uu) * NFElem(Rational(1) / s);
        NFElem q0l = -tt;               // Q0 - lambda
        NFElem q1l = -uu - tt;          // Q1 - lambda
        bool ok = (q0l * q1l + NFElem(n_const)).is_zero();
        for (const auto& a : others) {
            NFElem val = NFElem(a.m) + NFElem(Rational(a.d0)) * q0l + NFElem(Rational(a.d1)) * q1l;
            if (!val.is_zero()) ok = false;
        }
        {
            NFElem val = NFElem(m) + NFElem(Rational(ref->d0)) * q0l + NFElem(Rational(ref->d1)) * q1l;
            if (!val.is_zero()) ok = false;
        }
        if (ok) locus.lines.push_back({u, t});
    }
    return locus;
}

std::string nu2_locus_to_string(const Nu2Locus& locus) {
    std::ostringstream os;
    if (locus.certificate) {
        os << "empty (constant coefficient certificate at z^" << offset_to_string(*locus.certificate) << ")\n";
        return os.str();
    }
    if (locus.lines.empty()) {
        os << "empty (inconsistent coefficient constraints)\n";
        return os.str();
    }
    for (const auto& line : locus.lines)
        os << "line: Q1 = Q0 - (" << line.u.to_string() << "), flat value lambda = Q0 + (" << line.t.to_string()
           << ")\n";
    return os.str();
}

std::string nu2_locus_to_json(const Nu2Locus& locus) {
    ordered_json j;
    j["empty"] = locus.empty();
    if (locus.certificate) j["certificate_exponent"] = *locus.certificate;
    j["lines"] = ordered_json::array();
    for (const auto& line : locus.lines) {
        ordered_json jl;
        ordered_json um = ordered_json::array(), tm = ordered_json::array();
        ZPoly up = line.u.minpoly(), tp = line.t.minpoly();
        for (const auto& c : up.coeffs()) um.push_back(c.str());
        for (const auto& c : tp.coeffs()) tm.push_back(c.str());
        jl["u"] = line.u.to_string();
        jl["u_minpoly"] = um;
        jl["t"] = line.t.to_string();
        jl["t_minpoly"] = tm;
        jl["line"] = "Q1 = Q0 - u, lambda = Q0 + t";
        j["lines"].push_back(jl);
    }
    return j.dump(2) + "\n";
}

FlatBandReport detect_with_potential(const PeriodicGraph& g, const std::vector<Rational>& q) {
    if (static_cast<int>(q.size()) != g.nu) throw error("potential arity mismatch");
    return detect_flat_bands(with_potential(g, q));
}

}  // namespace flatband
