#include "kslab/field.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace kslab {

// ---------------------------------------------------------------------------
// fp64

namespace fp64 {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p));
    // extended Euclid on signed 128-bit accumulators
    __int128 t = 0, newt = 1;
    __int128 r = p, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t reduce(const mpz_class& n, std::uint64_t p) {
    mpz_class r = n % mpz_class(p);
    if (r < 0) r += p;
    return r.get_ui();
}

}  // namespace fp64

// ---------------------------------------------------------------------------
// fppoly

namespace fppoly {

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = fp64::add(x, y, p);
    }
    trim(r);
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = fp64::sub(x, y, p);
    }
    trim(r);
    return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = fp64::add(r[i + j], fp64::mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    FpPoly rem = a, quot;
    int db = deg(b);
    std::uint64_t lb_inv = fp64::inv(b.back(), p);
    if (deg(rem) >= db) quot.assign(deg(rem) - db + 1, 0);
    while (deg(rem) >= db) {
        int shift = deg(rem) - db;
        std::uint64_t c = fp64::mul(rem.back(), lb_inv, p);
        quot[shift] = c;
        for (int i = 0; i <= db; ++i)
            rem[shift + i] = fp64::sub(rem[shift + i], fp64::mul(c, b[i], p), p);
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    while (!b.empty()) {
        FpPoly r = divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t inv = fp64::inv(a.back(), p);
        for (auto& c : a) c = fp64::mul(c, inv, p);
    }
    return a;
}

FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, std::uint64_t p) {
    FpPoly r{1}, b = divrem(base, mod, p).second;
    for (long bit = mpz_sizeinbase(e.get_mpz_t(), 2) - 1; bit >= 0; --bit) {
        r = divrem(mul(r, r, p), mod, p).second;
        if (mpz_tstbit(e.get_mpz_t(), bit)) r = divrem(mul(r, b, p), mod, p).second;
    }
    return r;
}

std::uint64_t eval(const FpPoly& a, std::uint64_t x, std::uint64_t p) {
    std::uint64_t r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = fp64::add(fp64::mul(r, x, p), *it, p);
    return r;
}

bool is_irreducible(const FpPoly& f, std::uint64_t p) {
    int k = deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    // Rabin: t^(p^k) == t mod f, and gcd(t^(p^(k/q)) - t, f) = 1 for prime q | k
    FpPoly t{0, 1};
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    if (powmod(t, pk, f, p) != t) return false;
    std::vector<unsigned> prime_divisors;
    unsigned rest = k;
    for (unsigned q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        prime_divisors.push_back(q);
        while (rest % q == 0) rest /= q;
    }
    if (rest > 1) prime_divisors.push_back(rest);
    for (unsigned q : prime_divisors) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, k / q);
        FpPoly diff = sub(powmod(t, e, f, p), t, p);
        if (deg(gcd(diff, f, p)) != 0) return false;
    }
    return true;
}

}  // namespace fppoly

FpPoly find_irreducible(std::uint64_t p, unsigned k) {
    if (!fp64::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    FpPoly f(k + 1, 0);
    f[k] = 1;
    // walk coefficient tuples (a_0, ..., a_{k-1}) in ascending sum a_i p^i order
    while (true) {
        if (fppoly::is_irreducible(f, p)) return f;
        unsigned i = 0;
        while (i < k && f[i] == p - 1) f[i++] = 0;
        if (i == k) throw std::logic_error("no irreducible found");  // unreachable
        ++f[i];
    }
}

// ---------------------------------------------------------------------------
// FieldDesc / factories

std::string FieldDesc::name() const {
    switch (kind) {
        case FieldKind::Q: return "q";
        case FieldKind::QI: return "qi";
        case FieldKind::FP: return "fp:" + std::to_string(p);
        case FieldKind::FQ: return "fq:" + std::to_string(p) + "^" + std::to_string(k);
    }
    return "?";
}

FieldRef field_q() {
    static const FieldRef f = std::make_shared<FieldDesc>(FieldDesc{FieldKind::Q});
    return f;
}

FieldRef field_qi() {
    static const FieldRef f = std::make_shared<FieldDesc>(FieldDesc{FieldKind::QI});
    return f;
}

FieldRef field_fp(std::uint64_t p) {
    if (!fp64::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p >= (1ull << 63)) throw std::invalid_argument("prime modulus must fit in 63 bits");
    return std::make_shared<FieldDesc>(FieldDesc{FieldKind::FP, p});
}

FieldRef field_fq(std::uint64_t p, unsigned k) { return field_fq(p, k, find_irreducible(p, k)); }

FieldRef field_fq(std::uint64_t p, unsigned k, FpPoly modulus) {
    if (!fp64::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (fppoly::deg(modulus) != static_cast<int>(k) || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree k");
    if (!fppoly::is_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible");
    return std::make_shared<FieldDesc>(FieldDesc{FieldKind::FQ, p, k, std::move(modulus)});
}

FieldRef field_from_spec(const std::string& spec) {
    if (spec == "q") return field_q();
    if (spec == "qi") return field_qi();
    if (spec.rfind("fp:", 0) == 0) return field_fp(std::stoull(spec.substr(3)));
    if (spec.rfind("fq:", 0) == 0) {
        auto body = spec.substr(3);
        auto caret = body.find('^');
        if (caret == std::string::npos) throw std::invalid_argument("bad field spec: " + spec);
        return field_fq(std::stoull(body.substr(0, caret)),
                        static_cast<unsigned>(std::stoul(body.substr(caret + 1))));
    }
    throw std::invalid_argument("bad field spec: " + spec + " (want q | qi | fp:<p> | fq:<p>^<k>)");
}

// ---------------------------------------------------------------------------
// ext: raw-span arithmetic in F_p[t]/(modulus)

namespace ext {

void add(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) {
    for (unsigned i = 0; i < F.k; ++i) out[i] = fp64::add(a[i], b[i], F.p);
}

void sub(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) {
    for (unsigned i = 0; i < F.k; ++i) out[i] = fp64::sub(a[i], b[i], F.p);
}

void neg(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out) {
    for (unsigned i = 0; i < F.k; ++i) out[i] = fp64::neg(a[i], F.p);
}

void mul(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) {
    const unsigned k = F.k;
    const std::uint64_t p = F.p;
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j)
            prod[i + j] = fp64::add(prod[i + j], fp64::mul(a[i], b[j], p), p);
    }
    // reduce by the monic modulus: t^k = -(m_0 + ... + m_{k-1} t^{k-1})
    for (int d = static_cast<int>(2 * k - 2); d >= static_cast<int>(k); --d) {
        std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < k; ++i)
            prod[d - k + i] = fp64::sub(prod[d - k + i], fp64::mul(c, F.modulus[i], p), p);
    }
    for (unsigned i = 0; i < k; ++i) out[i] = prod[i];
}

bool is_zero(const FieldDesc& F, const std::uint64_t* a) {
    for (unsigned i = 0; i < F.k; ++i)
        if (a[i] != 0) return false;
    return true;
}

void inv(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out) {
    if (is_zero(F, a)) throw std::domain_error("inverse of zero in " + F.name());
    FpPoly av(a, a + F.k);
    fppoly::trim(av);
    // extended Euclid in F_p[t]: s*av + t*modulus = gcd = const
    FpPoly r0 = F.modulus, r1 = av, s0{}, s1{1};
    while (!r1.empty()) {
        auto [q, r2] = fppoly::divrem(r0, r1, F.p);
        FpPoly s2 = fppoly::sub(s0, fppoly::mul(q, s1, F.p), F.p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    std::uint64_t c = fp64::inv(r0.back(), F.p);  // r0 is a nonzero constant (deg 0)
    std::fill(out, out + F.k, 0);
    for (size_t i = 0; i < s0.size(); ++i) out[i] = fp64::mul(s0[i], c, F.p);
}

void pow_u64(const FieldDesc& F, const std::uint64_t* a, std::uint64_t e, std::uint64_t* out) {
    std::vector<std::uint64_t> base(a, a + F.k), r(F.k, 0), tmp(F.k);
    r[0] = 1;
    while (e) {
        if (e & 1) {
            mul(F, r.data(), base.data(), tmp.data());
            r = tmp;
        }
        mul(F, base.data(), base.data(), tmp.data());
        base = tmp;
        e >>= 1;
    }
    std::copy(r.begin(), r.end(), out);
}

void frobenius(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out) {
    pow_u64(F, a, F.p, out);
}

int cmp_encoding(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b) {
    for (int i = static_cast<int>(F.k) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace ext

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::zero(const FieldRef& f) {
    switch (f->kind) {
        case FieldKind::Q: return Scalar(f, Rational());
        case FieldKind::QI: return Scalar(f, GaussianRational());
        case FieldKind::FP: return Scalar(f, std::uint64_t{0});
        case FieldKind::FQ: return Scalar(f, ExtElem(f->k, 0));
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::one(const FieldRef& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldRef& f, const mpz_class& n) {
    switch (f->kind) {
        case FieldKind::Q: return Scalar(f, Rational(n));
        case FieldKind::QI: return Scalar(f, GaussianRational(Rational(n)));
        case FieldKind::FP: return Scalar(f, fp64::reduce(n, f->p));
        case FieldKind::FQ: {
            ExtElem e(f->k, 0);
            e[0] = fp64::reduce(n, f->p);
            return Scalar(f, std::move(e));
        }
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::from_rational(const FieldRef& f, const Rational& r) {
    if (f->kind == FieldKind::Q) return Scalar(f, r);
    if (f->kind == FieldKind::QI) return Scalar(f, GaussianRational(r));
    if (r.is_integer()) return from_int(f, r.num());
    // a/b in F_p: a * b^{-1}
    Scalar num = from_int(f, r.num());
    Scalar den = from_int(f, r.den());
    return num / den;
}

Scalar Scalar::i(const FieldRef& f) {
    if (f->kind != FieldKind::QI)
        throw std::invalid_argument("imaginary unit is not an element of " + f->name());
    return Scalar(f, GaussianRational(Rational(0), Rational(1)));
}

Scalar Scalar::from_fp(const FieldRef& f, std::uint64_t v) {
    if (f->kind != FieldKind::FP) throw std::invalid_argument("from_fp needs a prime field");
    return Scalar(f, v % f->p);
}

Scalar Scalar::from_ext(const FieldRef& f, ExtElem coeffs) {
    if (f->kind != FieldKind::FQ) throw std::invalid_argument("from_ext needs an extension field");
    if (coeffs.size() != f->k) throw std::invalid_argument("coefficient vector has wrong length");
    for (auto& c : coeffs) c %= f->p;
    return Scalar(f, std::move(coeffs));
}

Scalar Scalar::generator(const FieldRef& f) {
    if (f->kind != FieldKind::FQ) throw std::invalid_argument("generator needs an extension field");
    ExtElem e(f->k, 0);
    if (f->k > 1) e[1] = 1;
    // k = 1: t is congruent to -m_0
    else
        e[0] = fp64::neg(f->modulus[0], f->p);
    return Scalar(f, std::move(e));
}

void Scalar::check_same_field(const Scalar& o) const {
    if (!same_field(field_, o.field_))
        throw std::invalid_argument("mixed-field operands: " + field_->name() + " vs " +
                                    o.field_->name());
}

bool Scalar::is_zero() const {
    switch (kind()) {
        case FieldKind::Q: return std::get<Rational>(v_).is_zero();
        case FieldKind::QI: return std::get<GaussianRational>(v_).is_zero();
        case FieldKind::FP: return std::get<std::uint64_t>(v_) == 0;
        case FieldKind::FQ: return ext::is_zero(*field_, std::get<ExtElem>(v_).data());
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

Scalar Scalar::operator-() const {
    switch (kind()) {
        case FieldKind::Q: return Scalar(field_, -std::get<Rational>(v_));
        case FieldKind::QI: return Scalar(field_, -std::get<GaussianRational>(v_));
        case FieldKind::FP: return Scalar(field_, fp64::neg(std::get<std::uint64_t>(v_), field_->p));
        case FieldKind::FQ: {
            ExtElem r(field_->k);
            ext::neg(*field_, std::get<ExtElem>(v_).data(), r.data());
            return Scalar(field_, std::move(r));
        }
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    switch (kind()) {
        case FieldKind::Q: return Scalar(field_, std::get<Rational>(v_) + std::get<Rational>(o.v_));
        case FieldKind::QI:
            return Scalar(field_, std::get<GaussianRational>(v_) + std::get<GaussianRational>(o.v_));
        case FieldKind::FP:
            return Scalar(field_, fp64::add(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_),
                                            field_->p));
        case FieldKind::FQ: {
            ExtElem r(field_->k);
            ext::add(*field_, std::get<ExtElem>(v_).data(), std::get<ExtElem>(o.v_).data(), r.data());
            return Scalar(field_, std::move(r));
        }
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    switch (kind()) {
        case FieldKind::Q: return Scalar(field_, std::get<Rational>(v_) * std::get<Rational>(o.v_));
        case FieldKind::QI:
            return Scalar(field_, std::get<GaussianRational>(v_) * std::get<GaussianRational>(o.v_));
        case FieldKind::FP:
            return Scalar(field_, fp64::mul(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_),
                                            field_->p));
        case FieldKind::FQ: {
            ExtElem r(field_->k);
            ext::mul(*field_, std::get<ExtElem>(v_).data(), std::get<ExtElem>(o.v_).data(), r.data());
            return Scalar(field_, std::move(r));
        }
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in " + field_->name());
    switch (kind()) {
        case FieldKind::Q: return Scalar(field_, std::get<Rational>(v_).inv());
        case FieldKind::QI: return Scalar(field_, std::get<GaussianRational>(v_).inv());
        case FieldKind::FP: return Scalar(field_, fp64::inv(std::get<std::uint64_t>(v_), field_->p));
        case FieldKind::FQ: {
            ExtElem r(field_->k);
            ext::inv(*field_, std::get<ExtElem>(v_).data(), r.data());
            return Scalar(field_, std::move(r));
        }
    }
    throw std::logic_error("bad field kind");
}

Scalar Scalar::conj() const {
    if (kind() == FieldKind::QI) return Scalar(field_, std::get<GaussianRational>(v_).conj());
    return *this;
}

Scalar Scalar::pow(std::uint64_t e) const {
    Scalar r = one(field_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!same_field(field_, o.field_)) return false;
    return v_ == o.v_;
}

const Rational& Scalar::rat() const {
    if (kind() != FieldKind::Q) throw std::logic_error("not a rational scalar");
    return std::get<Rational>(v_);
}

const GaussianRational& Scalar::gauss() const {
    if (kind() != FieldKind::QI) throw std::logic_error("not a Gaussian rational scalar");
    return std::get<GaussianRational>(v_);
}

std::uint64_t Scalar::fp() const {
    if (kind() != FieldKind::FP) throw std::logic_error("not a prime field scalar");
    return std::get<std::uint64_t>(v_);
}

const Scalar::ExtElem& Scalar::ext() const {
    if (kind() != FieldKind::FQ) throw std::logic_error("not an extension field scalar");
    return std::get<ExtElem>(v_);
}

std::string Scalar::str() const {
    switch (kind()) {
        case FieldKind::Q: return rat().str();
        case FieldKind::QI: {
            const auto& g = gauss();
            if (g.im().is_zero()) return g.re().str();
            std::string im = g.im().is_one() ? "i" : (g.im() == Rational(-1) ? "-i" : g.im().str() + "*i");
            if (g.re().is_zero()) return im;
            std::string s = g.re().str();
            if (g.im().sign() > 0)
                s += "+" + im;
            else
                s += im[0] == '-' ? im : "-" + im;
            return s;
        }
        case FieldKind::FP: return std::to_string(fp());
        case FieldKind::FQ: {
            std::ostringstream os;
            os << "[";
            const auto& e = ext();
            for (unsigned i = 0; i < field_->k; ++i) os << (i ? "," : "") << e[i];
            os << "]";
            return os.str();
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Root finding in a tower, and subfield embedding.

namespace {

// Univariate polynomials with ExtElem coefficients (ascending), used only for
// splitting a small irreducible over the target tower.
using EPoly = std::vector<Scalar::ExtElem>;

void etrim(const FieldDesc& F, EPoly& a) {
    while (!a.empty() && ext::is_zero(F, a.back().data())) a.pop_back();
}

EPoly eadd(const FieldDesc& F, const EPoly& a, const EPoly& b) {
    EPoly r(std::max(a.size(), b.size()), Scalar::ExtElem(F.k, 0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size())
            ext::add(F, a[i].data(), b[i].data(), r[i].data());
        else
            r[i] = i < a.size() ? a[i] : b[i];
    }
    etrim(F, r);
    return r;
}

EPoly emul(const FieldDesc& F, const EPoly& a, const EPoly& b) {
    if (a.empty() || b.empty()) return {};
    EPoly r(a.size() + b.size() - 1, Scalar::ExtElem(F.k, 0));
    Scalar::ExtElem t(F.k);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            ext::mul(F, a[i].data(), b[j].data(), t.data());
            ext::add(F, r[i + j].data(), t.data(), r[i + j].data());
        }
    etrim(F, r);
    return r;
}

// {quotient, remainder} of a by a nonzero b
std::pair<EPoly, EPoly> edivrem(const FieldDesc& F, EPoly a, const EPoly& b) {
    Scalar::ExtElem lb_inv(F.k), c(F.k), t(F.k);
    ext::inv(F, b.back().data(), lb_inv.data());
    EPoly quot;
    if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, Scalar::ExtElem(F.k, 0));
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        ext::mul(F, a.back().data(), lb_inv.data(), c.data());
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            ext::mul(F, c.data(), b[i].data(), t.data());
            ext::sub(F, a[shift + i].data(), t.data(), a[shift + i].data());
        }
        etrim(F, a);
    }
    etrim(F, quot);
    return {std::move(quot), std::move(a)};
}

EPoly erem(const FieldDesc& F, EPoly a, const EPoly& b) {
    return edivrem(F, std::move(a), b).second;
}

EPoly egcd(const FieldDesc& F, EPoly a, EPoly b) {
    while (!b.empty()) {
        EPoly r = erem(F, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Scalar::ExtElem inv(F.k), t(F.k);
        ext::inv(F, a.back().data(), inv.data());
        for (auto& c : a) {
            ext::mul(F, c.data(), inv.data(), t.data());
            c = t;
        }
    }
    return a;
}

EPoly epowmod(const FieldDesc& F, const EPoly& base, const mpz_class& e, const EPoly& mod) {
    EPoly r{Scalar::ExtElem(F.k, 0)};
    r[0][0] = 1;
    EPoly b = erem(F, base, mod);
    for (long bit = mpz_sizeinbase(e.get_mpz_t(), 2) - 1; bit >= 0; --bit) {
        r = erem(F, emul(F, r, r), mod);
        if (mpz_tstbit(e.get_mpz_t(), bit)) r = erem(F, emul(F, r, b), mod);
    }
    return r;
}

// One root of a monic squarefree polynomial that splits completely over the
// tower. Randomized splitting with a fixed seed; the caller derives the full
// (deterministic) root set as the Frobenius orbit.
Scalar::ExtElem find_any_root(const FieldDesc& F, EPoly f) {
    std::mt19937_64 rng(0x5eedfu);
    std::uniform_int_distribution<std::uint64_t> coeff(0, F.p - 1);
    while (f.size() > 2) {
        // random linear t + a; split f by gcd with a power/trace of it
        EPoly shifted(2, Scalar::ExtElem(F.k, 0));
        for (unsigned i = 0; i < F.k; ++i) shifted[0][i] = coeff(rng);
        shifted[1][0] = 1;
        EPoly g;
        if (F.p == 2) {
            // gcd with the additive trace of (t + a) over F_2
            EPoly s = erem(F, shifted, f), x = s;
            for (unsigned i = 1; i < F.k; ++i) {
                x = erem(F, emul(F, x, x), f);
                s = eadd(F, s, x);
            }
            g = egcd(F, f, s);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), F.p, F.k);
            e = (e - 1) / 2;
            EPoly h = epowmod(F, shifted, e, f);
            if (!h.empty()) {
                Scalar::ExtElem one(F.k, 0);
                one[0] = 1;
                ext::sub(F, h[0].data(), one.data(), h[0].data());
                etrim(F, h);
                g = egcd(F, f, h);
            }
        }
        if (g.size() > 1 && g.size() < f.size()) {
            EPoly other = edivrem(F, f, g).first;
            f = g.size() <= other.size() ? std::move(g) : std::move(other);
        }
    }
    // f = t - root (monic linear)
    Scalar::ExtElem root(F.k);
    ext::neg(F, f[0].data(), root.data());
    return root;
}

}  // namespace

std::vector<Scalar> roots_in_field(const FpPoly& needle, const FieldRef& field) {
    const FieldDesc& F = *field;
    if (F.kind != FieldKind::FQ) throw std::invalid_argument("roots_in_field needs a tower");
    unsigned d = static_cast<unsigned>(fppoly::deg(needle));
    if (d == 0 || F.k % d != 0)
        throw std::invalid_argument("degree " + std::to_string(d) + " does not divide " +
                                    std::to_string(F.k));
    // lift the needle's F_p coefficients into the tower
    EPoly lifted(needle.size(), Scalar::ExtElem(F.k, 0));
    for (size_t i = 0; i < needle.size(); ++i) lifted[i][0] = needle[i];
    Scalar::ExtElem r = find_any_root(F, lifted);
    // the d roots are the Frobenius orbit of any one of them
    std::vector<Scalar::ExtElem> orbit{r};
    Scalar::ExtElem cur(F.k);
    ext::frobenius(F, r.data(), cur.data());
    while (ext::cmp_encoding(F, cur.data(), r.data()) != 0) {
        orbit.push_back(cur);
        Scalar::ExtElem next(F.k);
        ext::frobenius(F, cur.data(), next.data());
        cur = next;
    }
    std::sort(orbit.begin(), orbit.end(), [&](const auto& a, const auto& b) {
        return ext::cmp_encoding(F, a.data(), b.data()) < 0;
    });
    std::vector<Scalar> out;
    out.reserve(orbit.size());
    for (auto& e : orbit) out.push_back(Scalar::from_ext(field, std::move(e)));
    return out;
}

Scalar embed_subfield(const Scalar& x, const FieldRef& target) {
    if (target->kind != FieldKind::FQ && target->kind != FieldKind::FP)
        throw std::invalid_argument("embedding target must be a finite field");
    const FieldRef& src = x.field();
    if (src->kind != FieldKind::FP && src->kind != FieldKind::FQ)
        throw std::invalid_argument("embedding source must be a finite field");
    if (src->p != target->p) throw std::invalid_argument("towers have different characteristic");
    unsigned d = src->kind == FieldKind::FP ? 1 : src->k;
    unsigned k = target->kind == FieldKind::FP ? 1 : target->k;
    if (k % d != 0)
        throw std::invalid_argument("no embedding: " + std::to_string(d) + " does not divide " +
                                    std::to_string(k));
    if (same_field(src, target)) return x;
    if (src->kind == FieldKind::FP) return Scalar::from_int(target, mpz_class(x.fp()));
    if (d == 1) return Scalar::from_int(target, mpz_class(x.ext()[0]));
    // generator image: minimal root of the source modulus in the target
    Scalar gen_image = roots_in_field(src->modulus, target).front();
    Scalar acc = Scalar::zero(target);
    Scalar pw = Scalar::one(target);
    for (unsigned i = 0; i < d; ++i) {
        acc = acc + pw * Scalar::from_int(target, mpz_class(x.ext()[i]));
        if (i + 1 < d) pw = pw * gen_image;
    }
    return acc;
}

}  // namespace kslab
