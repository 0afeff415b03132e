#include "kslab/galois_lab.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kslab/exactla.hpp"

namespace kslab {

int frobenius_degree(const Scalar& x) {
    if (x.kind() == FieldKind::FP) return 1;
    if (x.kind() != FieldKind::FQ)
        throw std::invalid_argument("frobenius_degree needs a finite-field element");
    const FieldDesc& F = *x.field();
    Scalar::ExtElem cur(F.k);
    ext::frobenius(F, x.ext().data(), cur.data());
    int d = 1;
    while (ext::cmp_encoding(F, cur.data(), x.ext().data()) != 0) {
        Scalar::ExtElem next(F.k);
        ext::frobenius(F, cur.data(), next.data());
        cur = next;
        ++d;
        if (d > static_cast<int>(F.k)) throw std::logic_error("frobenius orbit exceeded k");
    }
    return d;
}

bool subfield_contains(const Scalar& x, const Scalar& y) {
    if (!same_field(x.field(), y.field()))
        throw std::invalid_argument("subfield_contains: elements live in different towers");
    return frobenius_degree(y) % frobenius_degree(x) == 0;
}

std::string to_string(Containment c) {
    switch (c) {
        case Containment::AInFb: return "a-in-F[b]";
        case Containment::BInFa: return "b-in-F[a]";
        case Containment::Both: return "both";
        case Containment::Neither: return "neither";
    }
    return "?";
}

namespace {

Containment classify_containment(int deg_a, int deg_b) {
    bool a_in_b = deg_b % deg_a == 0;
    bool b_in_a = deg_a % deg_b == 0;
    if (a_in_b && b_in_a) return Containment::Both;
    if (a_in_b) return Containment::AInFb;
    if (b_in_a) return Containment::BInFa;
    return Containment::Neither;
}

}  // namespace

Scalar eval_in_tower(const BiPoly& f_fp, const Scalar& a, const Scalar& b) {
    if (f_fp.field()->kind != FieldKind::FP)
        throw std::invalid_argument("eval_in_tower expects a polynomial over F_p");
    if (!same_field(a.field(), b.field()))
        throw std::invalid_argument("eval_in_tower: mixed towers");
    Scalar acc = Scalar::zero(a.field());
    for (const auto& [e, c] : f_fp.terms())
        acc += Scalar::from_int(a.field(), mpz_class(c.fp())) *
               a.pow(static_cast<std::uint64_t>(e.n)) * b.pow(static_cast<std::uint64_t>(e.m));
    return acc;
}

bool ZeroPairWitness::verify() const {
    if (!eval_in_tower(f, a, b).is_zero()) return false;
    if (frobenius_degree(a) != deg_a || frobenius_degree(b) != deg_b) return false;
    return classify_containment(deg_a, deg_b) == containment;
}

std::uint64_t default_enum_cap() {
    if (const char* env = std::getenv("KSLAB_ENUM_CAP")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("KSLAB_ENUM_CAP must be a positive integer");
    }
    return 1ull << 24;
}

// ---------------------------------------------------------------------------
// Enumeration of an embedded subfield, flattened for the pair-scan kernels.

namespace {

struct SubfieldList {
    unsigned k;                        // limbs per element
    std::vector<std::uint64_t> flat;   // size() / k elements, ascending encoding
    std::vector<int> degree;           // exact Frobenius degree per element

    std::size_t count() const { return degree.size(); }
    const std::uint64_t* at(std::size_t i) const { return flat.data() + i * k; }
};

int flat_frobenius_degree(const FieldDesc& F, const std::uint64_t* x) {
    std::vector<std::uint64_t> cur(F.k);
    ext::frobenius(F, x, cur.data());
    int d = 1;
    while (ext::cmp_encoding(F, cur.data(), x) != 0) {
        std::vector<std::uint64_t> next(F.k);
        ext::frobenius(F, cur.data(), next.data());
        cur = next;
        ++d;
    }
    return d;
}

// All p^d elements of the embedded F_{p^d} inside the tower, sorted in the
// fixed element order.
SubfieldList enumerate_embedded_subfield(const FieldRef& tower, int d) {
    const FieldDesc& F = *tower;
    SubfieldList list;
    list.k = F.k;
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= F.p;
    list.flat.assign(n * F.k, 0);

    if (d == 1) {
        for (std::size_t c = 0; c < F.p; ++c) list.flat[c * F.k] = c;
    } else {
        Scalar gen = roots_in_field(find_irreducible(F.p, static_cast<unsigned>(d)), tower).front();
        // powers gen^0 .. gen^{d-1}
        std::vector<std::vector<std::uint64_t>> pw(static_cast<std::size_t>(d),
                                                   std::vector<std::uint64_t>(F.k, 0));
        pw[0][0] = 1;
        for (int i = 1; i < d; ++i) ext::mul(F, pw[i - 1].data(), gen.ext().data(), pw[i].data());
        std::vector<std::uint64_t> tuple(static_cast<std::size_t>(d), 0), term(F.k);
        for (std::size_t idx = 0; idx < n; ++idx) {
            std::uint64_t* out = list.flat.data() + idx * F.k;
            for (int i = 0; i < d; ++i) {
                if (tuple[i] == 0) continue;
                for (unsigned j = 0; j < F.k; ++j)
                    term[j] = fp64::mul(pw[i][j], tuple[i], F.p);
                ext::add(F, out, term.data(), out);
            }
            // next coefficient tuple
            for (int i = 0; i < d; ++i) {
                if (++tuple[i] < F.p) break;
                tuple[i] = 0;
            }
        }
        // fixed element order = ascending ambient encoding
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
            return ext::cmp_encoding(F, list.flat.data() + x * F.k, list.flat.data() + y * F.k) < 0;
        });
        std::vector<std::uint64_t> sorted(n * F.k);
        for (std::size_t i = 0; i < n; ++i)
            std::copy(list.flat.data() + perm[i] * F.k, list.flat.data() + (perm[i] + 1) * F.k,
                      sorted.data() + i * F.k);
        list.flat = std::move(sorted);
    }

    list.degree.resize(n);
    for (std::size_t i = 0; i < n; ++i) list.degree[i] = flat_frobenius_degree(F, list.at(i));
    return list;
}

// w-exponent profile of f: coefficients grouped as f = sum_m A_m(z) w^m.
struct WGrouped {
    int max_m = 0;
    // per w-exponent, list of (z-exponent, coefficient)
    std::vector<std::vector<std::pair<int, std::uint64_t>>> rows;
};

WGrouped group_by_w(const BiPoly& f) {
    WGrouped g;
    g.max_m = std::max(f.degree_in_w(), 0);
    g.rows.assign(static_cast<std::size_t>(g.max_m) + 1, {});
    for (const auto& [e, c] : f.terms()) g.rows[e.m].emplace_back(e.n, c.fp());
    return g;
}

struct PairScanSetup {
    FieldRef tower;
    SubfieldList as, bs;
    WGrouped fw;
    int max_n = 0;
};

PairScanSetup prepare_pair_scan(const BiPoly& f, int d1, int d2, std::uint64_t pair_cap) {
    if (f.field()->kind != FieldKind::FP)
        throw std::invalid_argument("zero_pair_search expects a polynomial over F_p");
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("degree profile entries must be >= 1");

    const std::uint64_t p = f.field()->p;
    unsigned __int128 pairs = 1;
    for (int i = 0; i < d1 + d2; ++i) {
        pairs *= p;
        if (pairs > pair_cap)
            throw BudgetExceededError("profile (" + std::to_string(d1) + "," + std::to_string(d2) +
                                          ") needs p^" + std::to_string(d1 + d2) +
                                          " pairs, over the cap " + std::to_string(pair_cap),
                                      pair_cap);
    }

    int k = std::lcm(d1, d2);
    PairScanSetup s;
    s.tower = field_fq(p, static_cast<unsigned>(k));
    s.as = enumerate_embedded_subfield(s.tower, d1);
    s.bs = enumerate_embedded_subfield(s.tower, d2);
    s.fw = group_by_w(f);
    s.max_n = std::max(f.degree_in_z(), 0);
    return s;
}

// Kernel: does f(a, b) vanish? a-powers are precomputed by the caller.
bool vanishes_at(const FieldDesc& F, const PairScanSetup& s,
                 const std::vector<std::vector<std::uint64_t>>& apow, const std::uint64_t* b,
                 std::vector<std::uint64_t>& am, std::vector<std::uint64_t>& acc,
                 std::vector<std::uint64_t>& tmp) {
    // Horner in b over A_m(a) = sum_n c_{nm} a^n
    std::fill(acc.begin(), acc.end(), 0);
    for (int m = s.fw.max_m; m >= 0; --m) {
        ext::mul(F, acc.data(), b, tmp.data());
        std::swap(acc, tmp);
        std::fill(am.begin(), am.end(), 0);
        for (const auto& [n, c] : s.fw.rows[m]) {
            for (unsigned j = 0; j < F.k; ++j)
                tmp[j] = fp64::mul(apow[n][j], c, F.p);
            ext::add(F, am.data(), tmp.data(), am.data());
        }
        ext::add(F, acc.data(), am.data(), acc.data());
    }
    return ext::is_zero(F, acc.data());
}

std::optional<ZeroPairWitness> make_witness(const BiPoly& f, const PairScanSetup& s, int d1,
                                            int d2, std::size_t ia, std::size_t ib) {
    Scalar a = Scalar::from_ext(s.tower, {s.as.at(ia), s.as.at(ia) + s.as.k});
    Scalar b = Scalar::from_ext(s.tower, {s.bs.at(ib), s.bs.at(ib) + s.bs.k});
    ZeroPairWitness w{f, s.tower, a, b, d1, d2, classify_containment(d1, d2)};
    if (!w.verify()) throw std::logic_error("zero-pair candidate failed re-verification");
    return w;
}

std::optional<ZeroPairWitness> pair_scan(const BiPoly& f, int d1, int d2, std::uint64_t pair_cap,
                                         bool parallel) {
    PairScanSetup s = prepare_pair_scan(f, d1, d2, pair_cap);
    const FieldDesc& F = *s.tower;
    const std::size_t na = s.as.count(), nb = s.bs.count();

    const std::size_t none = na;  // sentinel
    std::size_t best_ia = none, best_ib = 0;

#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        std::vector<std::vector<std::uint64_t>> apow(
            static_cast<std::size_t>(s.max_n) + 1, std::vector<std::uint64_t>(F.k, 0));
        std::vector<std::uint64_t> am(F.k), acc(F.k), tmp(F.k);
        std::size_t local_ia = none, local_ib = 0;

#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
        for (std::ptrdiff_t ia_s = 0; ia_s < static_cast<std::ptrdiff_t>(na); ++ia_s) {
            std::size_t ia = static_cast<std::size_t>(ia_s);
            if (s.as.degree[ia] != d1) continue;
            if (ia >= local_ia) continue;  // a later a cannot beat the local best
            // powers of a
            apow[0].assign(F.k, 0);
            apow[0][0] = 1;
            for (int n = 1; n <= s.max_n; ++n)
                ext::mul(F, apow[n - 1].data(), s.as.at(ia), apow[n].data());
            for (std::size_t ib = 0; ib < nb; ++ib) {
                if (s.bs.degree[ib] != d2) continue;
                if (vanishes_at(F, s, apow, s.bs.at(ib), am, acc, tmp)) {
                    local_ia = ia;
                    local_ib = ib;
                    break;  // later b cannot beat this for the same a
                }
            }
        }

#ifdef _OPENMP
#pragma omp critical
#endif
        if (local_ia < best_ia || (local_ia == best_ia && local_ib < best_ib)) {
            best_ia = local_ia;
            best_ib = local_ib;
        }
    }

    if (best_ia == none) return std::nullopt;
    return make_witness(f, s, d1, d2, best_ia, best_ib);
}

}  // namespace

std::optional<ZeroPairWitness> zero_pair_search(const BiPoly& f, int d1, int d2,
                                                std::uint64_t pair_cap) {
    return pair_scan(f, d1, d2, pair_cap, true);
}

std::optional<ZeroPairWitness> zero_pair_search_serial(const BiPoly& f, int d1, int d2,
                                                       std::uint64_t pair_cap) {
    return pair_scan(f, d1, d2, pair_cap, false);
}

// ---------------------------------------------------------------------------
// Profile sweep

StructuralVerdict ZeroPairRefutation::verdict() const {
    return {StructuralCriterion::ZeroPair, StructuralOutcome::NotKS,
            "zero (a,b) with Frobenius degrees (" + std::to_string(witness.deg_a) + "," +
                std::to_string(witness.deg_b) + ") and containment " +
                to_string(witness.containment) + "; " + note,
            {{"f", witness.f}}};
}

namespace {

std::vector<std::pair<int, int>> refutation_profiles(int max_ext) {
    std::vector<std::pair<int, int>> profiles;
    for (int d1 = 2; d1 <= max_ext; ++d1)
        for (int d2 = 2; d2 <= max_ext; ++d2) {
            if (d1 % d2 == 0 || d2 % d1 == 0) continue;
            if (std::lcm(d1, d2) > max_ext) continue;
            profiles.emplace_back(d1, d2);
        }
    std::sort(profiles.begin(), profiles.end(), [](auto x, auto y) {
        auto key = [](std::pair<int, int> pr) {
            return std::tuple(std::lcm(pr.first, pr.second), pr.first, pr.second);
        };
        return key(x) < key(y);
    });
    return profiles;
}

const char* kSplittingFieldNote =
    "over F_p every finite extension is a splitting field, so degree divisibility is the only "
    "containment obstruction";

std::optional<ZeroPairRefutation> refute_impl(const BiPoly& f, int max_ext,
                                              std::uint64_t pair_cap, bool parallel) {
    if (max_ext < 1) throw std::invalid_argument("max_ext must be >= 1");
    auto profiles = refutation_profiles(max_ext);
    const int np = static_cast<int>(profiles.size());

    if (!parallel) {
        for (const auto& [d1, d2] : profiles) {
            if (auto w = zero_pair_search_serial(f, d1, d2, pair_cap))
                return ZeroPairRefutation{*w, kSplittingFieldNote};
        }
        return std::nullopt;
    }

    // workers report per-profile candidates; the first profile (in sweep
    // order) with a witness wins
    std::vector<std::optional<ZeroPairWitness>> hits(profiles.size());
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < np; ++i) {
        try {
            hits[i] = zero_pair_search_serial(f, profiles[i].first, profiles[i].second, pair_cap);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    for (auto& h : hits)
        if (h) return ZeroPairRefutation{*h, kSplittingFieldNote};
    return std::nullopt;
}

}  // namespace

std::optional<ZeroPairRefutation> ks_refute_by_zeros(const BiPoly& f, int max_ext,
                                                     std::uint64_t pair_cap) {
    return refute_impl(f, max_ext, pair_cap, true);
}

std::optional<ZeroPairRefutation> ks_refute_by_zeros_serial(const BiPoly& f, int max_ext,
                                                            std::uint64_t pair_cap) {
    return refute_impl(f, max_ext, pair_cap, false);
}

// ---------------------------------------------------------------------------
// Proposition-key experiment

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Scalar random_tower_element(const FieldRef& tower, std::mt19937_64& rng) {
    Scalar::ExtElem e(tower->k);
    for (auto& c : e) c = rng() % tower->p;
    return Scalar::from_ext(tower, std::move(e));
}

// F_p-span dimension of a set of tower elements, by exact rank.
std::size_t span_dimension(const FieldRef& tower, const std::vector<Scalar>& elems) {
    FieldRef fp = field_fp(tower->p);
    ExactMatrix m(elems.size(), tower->k, fp);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (unsigned j = 0; j < tower->k; ++j) m.at(i, j) = Scalar::from_fp(fp, elems[i].ext()[j]);
    return rank(m);
}

struct TrialResult {
    bool hypothesis;
    bool violation;
};

TrialResult run_trial(const FieldRef& tower, std::uint64_t seed, int trial) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
    Scalar a = random_tower_element(tower, rng);
    Scalar b = random_tower_element(tower, rng);
    const unsigned k = tower->k;

    std::vector<Scalar> apows, bpows, prods;
    Scalar ai = Scalar::one(tower);
    for (unsigned i = 0; i < k; ++i, ai = ai * a) apows.push_back(ai);
    Scalar bj = Scalar::one(tower);
    for (unsigned j = 0; j < k; ++j, bj = bj * b) bpows.push_back(bj);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prods.push_back(apows[i] * bpows[j]);

    std::size_t dim_a = span_dimension(tower, apows);
    std::size_t dim_b = span_dimension(tower, bpows);
    std::vector<Scalar> sum = apows;
    sum.insert(sum.end(), bpows.begin(), bpows.end());
    std::size_t dim_sum = span_dimension(tower, sum);
    std::size_t dim_prod = span_dimension(tower, prods);

    int deg_a = frobenius_degree(a), deg_b = frobenius_degree(b);
    if (dim_a != static_cast<std::size_t>(deg_a) || dim_b != static_cast<std::size_t>(deg_b))
        throw std::logic_error("span dimension disagrees with Frobenius degree");

    TrialResult r{dim_sum == dim_prod, false};
    if (r.hypothesis) r.violation = !(subfield_contains(a, b) || subfield_contains(b, a));
    return r;
}

PropKeyReport propkey_impl(std::uint64_t p, unsigned k, int trials, std::uint64_t seed,
                           bool parallel) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    FieldRef tower = field_fq(p, k);
    PropKeyReport rep{p, k, trials, seed, 0, 0, {}};

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int t = 0; t < trials; ++t) {
        try {
            results[static_cast<std::size_t>(t)] = run_trial(tower, seed, t);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (int t = 0; t < trials; ++t) {
        if (results[static_cast<std::size_t>(t)].hypothesis) ++rep.hypothesis_held;
        if (results[static_cast<std::size_t>(t)].violation) {
            ++rep.violations;
            rep.violating_trials.push_back(t);
        }
    }
    return rep;
}

}  // namespace

PropKeyReport proposition_key_experiment(std::uint64_t p, unsigned k, int trials,
                                         std::uint64_t seed) {
    return propkey_impl(p, k, trials, seed, true);
}

PropKeyReport proposition_key_experiment_serial(std::uint64_t p, unsigned k, int trials,
                                                std::uint64_t seed) {
    return propkey_impl(p, k, trials, seed, false);
}

}  // namespace kslab
