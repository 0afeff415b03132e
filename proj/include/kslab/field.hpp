#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kslab/rational.hpp"

namespace kslab {

// ---------------------------------------------------------------------------
// Machine-width arithmetic mod p (p prime, p < 2^63).

namespace fp64 {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);
/// Reduce a signed/huge integer into [0, p).
std::uint64_t reduce(const mpz_class& n, std::uint64_t p);

}  // namespace fp64

// ---------------------------------------------------------------------------
// Univariate polynomials over F_p: coefficient vector, ascending, no trailing zeros.

using FpPoly = std::vector<std::uint64_t>;

namespace fppoly {

void trim(FpPoly& a);
int deg(const FpPoly& a);  // deg(0) = -1
FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
/// Euclidean division by a nonzero divisor; returns {quotient, remainder}.
std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p);  // monic
FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, std::uint64_t p);
std::uint64_t eval(const FpPoly& a, std::uint64_t x, std::uint64_t p);
bool is_irreducible(const FpPoly& f, std::uint64_t p);

}  // namespace fppoly

/// First monic irreducible of degree k over F_p, in the fixed total order on
/// coefficient tuples (a_0 + a_1 p + ... ascending).
FpPoly find_irreducible(std::uint64_t p, unsigned k);

// ---------------------------------------------------------------------------
// Field descriptors. Every Scalar carries one; there is no global field context.

enum class FieldKind { Q, QI, FP, FQ };

struct FieldDesc {
    FieldKind kind;
    std::uint64_t p = 0;     // FP, FQ
    unsigned k = 1;          // FQ: extension degree
    FpPoly modulus;          // FQ: monic irreducible of degree k, size k+1

    bool operator==(const FieldDesc& o) const {
        return kind == o.kind && p == o.p && k == o.k && modulus == o.modulus;
    }
    std::string name() const;
    bool has_conjugation() const { return kind == FieldKind::Q || kind == FieldKind::QI; }
};

using FieldRef = std::shared_ptr<const FieldDesc>;

FieldRef field_q();
FieldRef field_qi();
FieldRef field_fp(std::uint64_t p);
/// F_{p^k} with the canonical (find_irreducible) modulus.
FieldRef field_fq(std::uint64_t p, unsigned k);
FieldRef field_fq(std::uint64_t p, unsigned k, FpPoly modulus);
/// Parse a CLI field spec: "q", "qi", "fp:<p>", "fq:<p>^<k>".
FieldRef field_from_spec(const std::string& spec);

inline bool same_field(const FieldRef& a, const FieldRef& b) {
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Extension-field element arithmetic on raw coefficient spans (k limbs each).
// Shared by Scalar and by the enumeration kernels in galois_lab.

namespace ext {

void add(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out);
void sub(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out);
void neg(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out);
void mul(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out);
void inv(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out);
void pow_u64(const FieldDesc& F, const std::uint64_t* a, std::uint64_t e, std::uint64_t* out);
/// x -> x^p, the Frobenius automorphism.
void frobenius(const FieldDesc& F, const std::uint64_t* a, std::uint64_t* out);
bool is_zero(const FieldDesc& F, const std::uint64_t* a);
/// Fixed total element order: compare encodings sum c_i p^i.
int cmp_encoding(const FieldDesc& F, const std::uint64_t* a, const std::uint64_t* b);

}  // namespace ext

// ---------------------------------------------------------------------------

/// One exact field element; payload and semantics follow the field descriptor.
class Scalar {
public:
    using ExtElem = std::vector<std::uint64_t>;

    Scalar() : field_(field_q()), v_(Rational()) {}

    static Scalar zero(const FieldRef& f);
    static Scalar one(const FieldRef& f);
    static Scalar from_int(const FieldRef& f, const mpz_class& n);
    static Scalar from_rational(const FieldRef& f, const Rational& r);  // Q or QI
    static Scalar i(const FieldRef& f);                                 // QI only
    static Scalar from_fp(const FieldRef& f, std::uint64_t v);          // FP
    static Scalar from_ext(const FieldRef& f, ExtElem coeffs);          // FQ
    /// Generator t of F_{p^k} = F_p[t]/(modulus).
    static Scalar generator(const FieldRef& f);

    const FieldRef& field() const { return field_; }
    FieldKind kind() const { return field_->kind; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inv() const;
    /// Identity on Q and F_p / F_{p^k}; complex conjugation on Q(i).
    Scalar conj() const;
    Scalar pow(std::uint64_t e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Payload accessors (checked).
    const Rational& rat() const;
    const GaussianRational& gauss() const;
    std::uint64_t fp() const;
    const ExtElem& ext() const;

    std::string str() const;

private:
    Scalar(FieldRef f, std::variant<Rational, GaussianRational, std::uint64_t, ExtElem> v)
        : field_(std::move(f)), v_(std::move(v)) {}

    void check_same_field(const Scalar& o) const;

    FieldRef field_;
    std::variant<Rational, GaussianRational, std::uint64_t, ExtElem> v_;
};

/// Image of x under the embedding of its field into the target tower
/// (requires deg(source) | deg(target), same p). The embedding sends the
/// source generator to the minimal root of the source modulus in the target,
/// so it is a deterministic field homomorphism fixing F_p pointwise.
Scalar embed_subfield(const Scalar& x, const FieldRef& target);

/// All roots in `field` of a monic irreducible needle over F_p whose degree
/// divides field->k, sorted in the fixed element order.
std::vector<Scalar> roots_in_field(const FpPoly& needle, const FieldRef& field);

}  // namespace kslab
