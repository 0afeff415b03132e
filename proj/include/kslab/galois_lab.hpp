#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/bipoly.hpp"
#include "kslab/ks_lab.hpp"

namespace kslab {

/// Minimal d >= 1 with x^(p^d) = x; equals [F_p(x) : F_p] and divides the
/// ambient extension degree.
int frobenius_degree(const Scalar& x);

/// x in F_p[y]? Over finite fields F_p[y] = F_{p^deg(y)}, so membership is
/// frobenius_degree(x) | frobenius_degree(y). Both elements must live in the
/// same ambient tower.
bool subfield_contains(const Scalar& x, const Scalar& y);

enum class Containment { AInFb, BInFa, Both, Neither };
std::string to_string(Containment c);

/// A zero (a, b) of f in F_{p^k} with the Frobenius degrees of its
/// coordinates. Containment "neither" certifies that f is not a
/// KS-polynomial over F_p.
struct ZeroPairWitness {
    BiPoly f;        // over F_p
    FieldRef tower;  // F_{p^k}
    Scalar a, b;
    int deg_a, deg_b;
    Containment containment;

    /// Exact re-check: f(a,b) = 0, degree minimality, containment from degrees.
    bool verify() const;
};

/// Evaluate a polynomial over F_p at a point of a tower over the same prime.
Scalar eval_in_tower(const BiPoly& f_fp, const Scalar& a, const Scalar& b);

/// The profile enumeration p^(d1+d2) would exceed the configured pair budget.
class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(std::string msg, std::uint64_t cap)
        : std::runtime_error(std::move(msg)), cap_(cap) {}
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
};

/// Default pair-enumeration budget; override with the KSLAB_ENUM_CAP
/// environment variable.
std::uint64_t default_enum_cap();

/// Enumerate a over the embedded F_{p^d1} and b over the embedded F_{p^d2}
/// inside F_{p^lcm(d1,d2)}, in the fixed element order, and return the first
/// pair with f(a,b) = 0 and exact Frobenius degrees (d1, d2). The pair scan
/// runs on OpenMP workers; the aggregator keeps the globally first hit.
std::optional<ZeroPairWitness> zero_pair_search(const BiPoly& f, int d1, int d2,
                                                std::uint64_t pair_cap);
std::optional<ZeroPairWitness> zero_pair_search_serial(const BiPoly& f, int d1, int d2,
                                                       std::uint64_t pair_cap);

struct ZeroPairRefutation {
    ZeroPairWitness witness;
    std::string note;

    StructuralVerdict verdict() const;
};

/// Sweep degree profiles (d1, d2) with neither degree dividing the other and
/// lcm <= max_ext, in ascending (lcm, d1, d2) order; the first witness found
/// refutes the KS property of f over F_p. Profiles run on OpenMP workers.
std::optional<ZeroPairRefutation> ks_refute_by_zeros(const BiPoly& f, int max_ext,
                                                     std::uint64_t pair_cap);
std::optional<ZeroPairRefutation> ks_refute_by_zeros_serial(const BiPoly& f, int max_ext,
                                                            std::uint64_t pair_cap);

/// Dimension-count experiment: sample (a, b) in F_{p^k}; whenever
/// dim(F[a] + F[b]) = dim F[a,b] as F_p-spaces (exact ranks), one of the two
/// subfields must contain the other. Violations are counted (expected 0).
struct PropKeyReport {
    std::uint64_t p;
    unsigned k;
    int trials;
    std::uint64_t seed;
    int hypothesis_held;  // trials where dim(F[a]+F[b]) = dim F[a,b]
    int violations;
    std::vector<int> violating_trials;
};

PropKeyReport proposition_key_experiment(std::uint64_t p, unsigned k, int trials,
                                         std::uint64_t seed);
PropKeyReport proposition_key_experiment_serial(std::uint64_t p, unsigned k, int trials,
                                                std::uint64_t seed);

}  // namespace kslab
