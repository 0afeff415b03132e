#include "kslab/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace kslab {

namespace {

void check_compatible(const BiPoly& a, const BiPoly& b) {
    if (!same_field(a.field(), b.field()))
        throw std::invalid_argument("mixed-field polynomials: " + a.field()->name() + " vs " +
                                    b.field()->name());
    if (a.vars() != b.vars())
        throw std::invalid_argument("mixed variable families (z,w vs x,y)");
}

}  // namespace

BiPoly BiPoly::constant(const Scalar& c, VarPair vars) {
    BiPoly p(c.field(), vars);
    p.set_coeff(0, 0, c);
    return p;
}

BiPoly BiPoly::monomial(const Scalar& c, int n, int m, VarPair vars) {
    BiPoly p(c.field(), vars);
    p.set_coeff(n, m, c);
    return p;
}

int BiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.total();  // canonical order is graded
}

int BiPoly::degree_in_z() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.n);
    return d;
}

int BiPoly::degree_in_w() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.m);
    return d;
}

Scalar BiPoly::coeff(int n, int m) const {
    auto it = terms_.find(Exponent{n, m});
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void BiPoly::set_coeff(int n, int m, const Scalar& c) {
    if (n < 0 || m < 0) throw std::invalid_argument("negative exponent");
    if (c.is_zero())
        terms_.erase(Exponent{n, m});
    else
        terms_[Exponent{n, m}] = c;
}

void BiPoly::add_term(int n, int m, const Scalar& c) { set_coeff(n, m, coeff(n, m) + c); }

BiPoly BiPoly::operator-() const {
    BiPoly r(field_, vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    check_compatible(*this, o);
    BiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.n, e.m, c);
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    check_compatible(*this, o);
    BiPoly r(field_, vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1.n + e2.n, e1.m + e2.m, c1 * c2);
    return r;
}

BiPoly BiPoly::operator*(const Scalar& c) const {
    if (c.is_zero()) return BiPoly(field_, vars_);
    BiPoly r(field_, vars_);
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

bool BiPoly::operator==(const BiPoly& o) const {
    return same_field(field_, o.field_) && vars_ == o.vars_ && terms_ == o.terms_;
}

Scalar BiPoly::eval(const Scalar& zval, const Scalar& wval) const {
    Scalar acc = Scalar::zero(field_);
    for (const auto& [e, c] : terms_)
        acc += c * zval.pow(static_cast<std::uint64_t>(e.n)) * wval.pow(static_cast<std::uint64_t>(e.m));
    return acc;
}

BiPoly BiPoly::compose(const BiPoly& zsub, const BiPoly& wsub) const {
    check_compatible(zsub, wsub);
    if (!same_field(field_, zsub.field()))
        throw std::invalid_argument("compose: coefficients and substitutions live in different fields");
    BiPoly acc(zsub.field(), zsub.vars());
    // power tables up to the needed degrees
    int dz = degree_in_z(), dw = degree_in_w();
    std::vector<BiPoly> zp{BiPoly::constant(Scalar::one(zsub.field()), zsub.vars())};
    std::vector<BiPoly> wp = zp;
    for (int i = 1; i <= dz; ++i) zp.push_back(zp.back() * zsub);
    for (int j = 1; j <= dw; ++j) wp.push_back(wp.back() * wsub);
    for (const auto& [e, c] : terms_) acc += zp[e.n] * wp[e.m] * c;
    return acc;
}

BiPoly BiPoly::coeff_of_w(int j) const {
    BiPoly r(field_, vars_);
    for (const auto& [e, c] : terms_)
        if (e.m == j) r.terms_[Exponent{e.n, 0}] = c;
    return r;
}

std::pair<Exponent, Scalar> BiPoly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return *terms_.begin();
}

BiPoly BiPoly::unit_normalized() const {
    if (terms_.empty()) return *this;
    auto lex_max = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->first.n > lex_max->first.n ||
            (it->first.n == lex_max->first.n && it->first.m > lex_max->first.m))
            lex_max = it;
    }
    return *this * lex_max->second.inv();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct CoeffDisplay {
    bool negative = false;
    std::string body;  // without sign
};

CoeffDisplay display_scalar(const Scalar& c) {
    switch (c.kind()) {
        case FieldKind::Q: {
            const Rational& r = c.rat();
            if (r.sign() < 0) return {true, (-r).str()};
            return {false, r.str()};
        }
        case FieldKind::QI: {
            const GaussianRational& g = c.gauss();
            if (g.im().is_zero())
                return {g.re().sign() < 0, (g.re().sign() < 0 ? -g.re() : g.re()).str()};
            if (g.re().is_zero()) {
                Rational im = g.im();
                bool neg = im.sign() < 0;
                if (neg) im = -im;
                return {neg, im.is_one() ? "i" : im.str() + "*i"};
            }
            return {false, "(" + c.str() + ")"};
        }
        default: return {false, c.str()};
    }
}

std::string monomial_text(const Exponent& e, VarPair vars) {
    const char* zn = vars == VarPair::ZW ? "z" : "x";
    const char* wn = vars == VarPair::ZW ? "w" : "y";
    std::string s;
    if (e.n > 0) {
        s += zn;
        if (e.n > 1) s += "^" + std::to_string(e.n);
    }
    if (e.m > 0) {
        if (!s.empty()) s += "*";
        s += wn;
        if (e.m > 1) s += "^" + std::to_string(e.m);
    }
    return s;
}

}  // namespace

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        CoeffDisplay d = display_scalar(c);
        std::string mono = monomial_text(e, vars_);
        std::string body;
        if (mono.empty())
            body = d.body;
        else if (d.body == "1")
            body = mono;
        else
            body = d.body + "*" + mono;
        if (first) {
            os << (d.negative ? "-" : "") << body;
            first = false;
        } else {
            os << (d.negative ? " - " : " + ") << body;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Division

std::pair<BiPoly, BiPoly> divide_with_remainder(const BiPoly& p, const BiPoly& q) {
    check_compatible(p, q);
    if (q.is_zero()) throw std::domain_error("polynomial division by zero");
    BiPoly rem = p;
    BiPoly quot(p.field(), p.vars());
    BiPoly tail(p.field(), p.vars());
    auto [lq, cq] = q.leading();
    while (!rem.is_zero()) {
        auto [lr, cr] = rem.leading();
        if (lr.n >= lq.n && lr.m >= lq.m) {
            BiPoly t = BiPoly::monomial(cr / cq, lr.n - lq.n, lr.m - lq.m, p.vars());
            quot += t;
            rem -= t * q;
        } else {
            tail.set_coeff(lr.n, lr.m, cr);
            rem.set_coeff(lr.n, lr.m, Scalar::zero(p.field()));
        }
    }
    return {quot, tail};
}

BiPoly exact_divide(const BiPoly& p, const BiPoly& q) {
    auto [quot, rem] = divide_with_remainder(p, q);
    if (!rem.is_zero())
        throw ExactDivisionError("not an exact multiple; remainder " + rem.str(), rem);
    return quot;
}

// ---------------------------------------------------------------------------
// Harmonicity operators

BiPoly fischer_D(const BiPoly& p) {
    BiPoly r(p.field(), p.vars());
    for (const auto& [e, c] : p.terms())
        if (e.mixed()) r.add_term(e.n - 1, e.m - 1, c);
    return r;
}

BiPoly mixed_part(const BiPoly& p) {
    BiPoly r(p.field(), p.vars());
    for (const auto& [e, c] : p.terms())
        if (e.mixed()) r.set_coeff(e.n, e.m, c);
    return r;
}

bool is_harmonic(const BiPoly& p) { return mixed_part(p).is_zero(); }

BiPoly hermitian_reflect(const BiPoly& p) {
    if (!p.field()->has_conjugation())
        throw std::invalid_argument("hermitian reflection needs Q or Q(i), got " + p.field()->name());
    BiPoly r(p.field(), p.vars());
    for (const auto& [e, c] : p.terms()) r.set_coeff(e.m, e.n, c.conj());
    return r;
}

// ---------------------------------------------------------------------------
// GCD: univariate in w over F[z], content/primitive-part Euclidean

namespace {

// monic univariate gcd of z-only polynomials
BiPoly z_gcd(BiPoly a, BiPoly b) {
    while (!b.is_zero()) {
        BiPoly r = divide_with_remainder(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * a.leading().second.inv();
}

// gcd over j of the w-coefficients: a z-only polynomial, monic
BiPoly content_w(const BiPoly& p) {
    BiPoly c(p.field(), p.vars());
    for (int j = 0; j <= p.degree_in_w(); ++j) {
        BiPoly cj = p.coeff_of_w(j);
        if (cj.is_zero()) continue;
        c = c.is_zero() ? (cj * cj.leading().second.inv()) : z_gcd(c, cj);
        if (c.is_constant()) break;
    }
    return c;
}

BiPoly primitive_part_w(const BiPoly& p) {
    if (p.is_zero()) return p;
    return exact_divide(p, content_w(p));
}

// classical pseudo-remainder of a by b, both viewed in w over F[z]
BiPoly prem_w(BiPoly a, const BiPoly& b) {
    int db = b.degree_in_w();
    BiPoly lcb = b.coeff_of_w(db);
    while (!a.is_zero() && a.degree_in_w() >= db) {
        int da = a.degree_in_w();
        BiPoly lca = a.coeff_of_w(da);
        BiPoly shift = BiPoly::monomial(Scalar::one(a.field()), 0, da - db, a.vars());
        a = a * lcb - b * shift * lca;
    }
    return a;
}

}  // namespace

BiPoly gcd(const BiPoly& p, const BiPoly& q) {
    check_compatible(p, q);
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    if (p.is_zero()) return q.unit_normalized();
    if (q.is_zero()) return p.unit_normalized();

    BiPoly cp = content_w(p), cq = content_w(q);
    BiPoly a = primitive_part_w(p), b = primitive_part_w(q);
    if (a.degree_in_w() < b.degree_in_w()) std::swap(a, b);
    while (!b.is_zero()) {
        BiPoly r = prem_w(a, b);
        a = std::move(b);
        b = primitive_part_w(r);
    }
    return (z_gcd(cp, cq) * a).unit_normalized();
}

// ---------------------------------------------------------------------------

std::size_t separable_rank(const BiPoly& p) {
    if (p.is_zero()) return 0;
    std::size_t rows = static_cast<std::size_t>(p.degree_in_z()) + 1;
    std::size_t cols = static_cast<std::size_t>(p.degree_in_w()) + 1;
    ExactMatrix m(rows, cols, p.field());
    for (const auto& [e, c] : p.terms()) m.at(e.n, e.m) = c;
    return rank(m);
}

// ---------------------------------------------------------------------------
// Real-form conversions

namespace {

BiPoly lift_to_qi(const BiPoly& p, VarPair vars) {
    FieldRef qi = field_qi();
    BiPoly r(qi, vars);
    for (const auto& [e, c] : p.terms()) {
        Scalar lifted = p.field()->kind == FieldKind::QI
                            ? Scalar::from_rational(qi, c.gauss().re()) +
                                  Scalar::i(qi) * Scalar::from_rational(qi, c.gauss().im())
                            : Scalar::from_rational(qi, c.rat());
        r.set_coeff(e.n, e.m, lifted);
    }
    return r;
}

}  // namespace

bool is_conjugate_symmetric(const BiPoly& p_zw) {
    for (const auto& [e, c] : p_zw.terms())
        if (p_zw.coeff(e.m, e.n) != c.conj()) return false;
    return true;
}

BiPoly to_zw(const BiPoly& p_xy) {
    if (p_xy.vars() != VarPair::XY)
        throw std::invalid_argument("to_zw expects a polynomial in x, y");
    if (!p_xy.field()->has_conjugation())
        throw std::invalid_argument("to_zw needs Q or Q(i) coefficients");
    FieldRef qi = field_qi();
    BiPoly lifted = lift_to_qi(p_xy, VarPair::XY);
    Scalar half = Scalar::from_rational(qi, Rational(1, 2));
    Scalar half_i = Scalar::i(qi) * half;
    // x = (z+w)/2, y = (z-w)/(2i) = -i/2 z + i/2 w
    BiPoly xsub(qi, VarPair::ZW), ysub(qi, VarPair::ZW);
    xsub.set_coeff(1, 0, half);
    xsub.set_coeff(0, 1, half);
    ysub.set_coeff(1, 0, -half_i);
    ysub.set_coeff(0, 1, half_i);
    return lifted.compose(xsub, ysub);
}

BiPoly to_xy(const BiPoly& p_zw) {
    if (p_zw.vars() != VarPair::ZW)
        throw std::invalid_argument("to_xy expects a polynomial in z, w");
    if (!p_zw.field()->has_conjugation())
        throw std::invalid_argument("to_xy needs Q or Q(i) coefficients");
    if (!is_conjugate_symmetric(p_zw))
        throw std::invalid_argument(
            "not conjugate-symmetric (coeff(n,m) must equal conj(coeff(m,n))); "
            "the polynomial is not real-valued on w = conj(z)");
    FieldRef qi = field_qi();
    BiPoly lifted = lift_to_qi(p_zw, VarPair::ZW);
    Scalar one = Scalar::one(qi), im = Scalar::i(qi);
    BiPoly zsub(qi, VarPair::XY), wsub(qi, VarPair::XY);
    zsub.set_coeff(1, 0, one);
    zsub.set_coeff(0, 1, im);
    wsub.set_coeff(1, 0, one);
    wsub.set_coeff(0, 1, -im);
    BiPoly res = lifted.compose(zsub, wsub);
    BiPoly out(field_q(), VarPair::XY);
    for (const auto& [e, c] : res.terms()) {
        if (!c.gauss().im().is_zero())
            throw std::logic_error("conjugate-symmetric input produced a non-real coefficient");
        out.set_coeff(e.n, e.m, Scalar::from_rational(field_q(), c.gauss().re()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conic classification (characteristic 0)

std::string to_string(ConicClass c) {
    switch (c) {
        case ConicClass::Circle: return "circle";
        case ConicClass::Ellipse: return "ellipse";
        case ConicClass::Parabola: return "parabola";
        case ConicClass::Hyperbola: return "hyperbola";
        case ConicClass::Line: return "line";
        case ConicClass::LinePairDegenerate: return "line-pair/degenerate";
        case ConicClass::PointOrEmpty: return "point/empty";
        case ConicClass::NotAConic: return "not-a-conic";
    }
    return "?";
}

ConicClass classify_conic(const BiPoly& p_xy) {
    if (p_xy.vars() != VarPair::XY)
        throw std::invalid_argument("classify_conic expects a polynomial in x, y");
    if (p_xy.is_zero()) throw std::invalid_argument("classify_conic: zero polynomial");
    FieldKind k = p_xy.field()->kind;
    if (k != FieldKind::Q && k != FieldKind::QI)
        throw std::invalid_argument("conic classification requires characteristic 0");
    if (p_xy.total_degree() > 2) return ConicClass::NotAConic;

    auto coeff_rat = [&](int n, int m) -> Rational {
        Scalar c = p_xy.coeff(n, m);
        if (k == FieldKind::Q) return c.rat();
        if (!c.gauss().im().is_zero())
            throw std::invalid_argument("conic classification requires real coefficients");
        return c.gauss().re();
    };
    Rational A = coeff_rat(2, 0), B = coeff_rat(1, 1), C = coeff_rat(0, 2);
    Rational D = coeff_rat(1, 0), E = coeff_rat(0, 1), F = coeff_rat(0, 0);

    if (p_xy.total_degree() == 0) return ConicClass::PointOrEmpty;  // nonzero constant
    if (p_xy.total_degree() == 1) return ConicClass::Line;

    Rational disc = B * B - Rational(4) * A * C;
    // determinant of 2x the full quadratic form [[2A,B,D],[B,2C,E],[D,E,2F]]
    Rational det = Rational(2) * A * (Rational(2) * C * Rational(2) * F - E * E) -
                   B * (B * Rational(2) * F - E * D) + D * (B * E - Rational(2) * C * D);
    bool degenerate = det.is_zero();

    if (disc.sign() < 0) {
        if (degenerate) return ConicClass::PointOrEmpty;  // single real point
        // real iff det and A+C have opposite signs
        if ((det * (A + C)).sign() > 0) return ConicClass::PointOrEmpty;  // imaginary ellipse
        if (A == C && B.is_zero()) return ConicClass::Circle;
        return ConicClass::Ellipse;
    }
    if (disc.is_zero()) return degenerate ? ConicClass::LinePairDegenerate : ConicClass::Parabola;
    return degenerate ? ConicClass::LinePairDegenerate : ConicClass::Hyperbola;
}

}  // namespace kslab
