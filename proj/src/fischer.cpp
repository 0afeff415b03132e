#include "kslab/fischer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kslab/exactla.hpp"

namespace kslab {

namespace {

// Unknown/equation monomials in canonical (total degree, z-exponent)
// descending order; this column order pins the witnesses the solvers return.
std::vector<Exponent> canonical_monomials(int max_deg, MonomialFilter filter) {
    std::vector<Exponent> v = monomial_basis(max_deg, filter);
    std::sort(v.begin(), v.end(), CanonicalLess{});
    return v;
}

// Matrix of the map g -> mixed_part(f*g) in the given bases.
ExactMatrix mixed_product_matrix(const BiPoly& f, const std::vector<Exponent>& cols,
                                 const std::vector<Exponent>& rows) {
    std::map<Exponent, std::size_t, CanonicalLess> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
    ExactMatrix m(rows.size(), cols.size(), f.field());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (const auto& [e, c] : f.terms()) {
            Exponent prod{e.n + cols[j].n, e.m + cols[j].m};
            if (!prod.mixed()) continue;
            auto it = row_index.find(prod);
            if (it == row_index.end()) throw std::logic_error("row basis too small");
            m.at(it->second, j) += c;
        }
    }
    return m;
}

BiPoly from_coefficients(const FieldRef& field, const std::vector<Exponent>& basis,
                         const std::vector<Scalar>& x) {
    BiPoly g(field);
    for (std::size_t j = 0; j < basis.size(); ++j) g.set_coeff(basis[j].n, basis[j].m, x[j]);
    return g;
}

}  // namespace

std::optional<HarmonicMultipleWitness> harmonic_multiple_search(const BiPoly& f,
                                                                int max_cofactor_deg) {
    if (f.is_zero()) throw std::invalid_argument("harmonic_multiple_search: f must be nonzero");
    if (max_cofactor_deg < 0) throw std::invalid_argument("negative cofactor degree bound");

    auto cols = canonical_monomials(max_cofactor_deg, MonomialFilter::All);
    auto rows = canonical_monomials(f.total_degree() + max_cofactor_deg, MonomialFilter::MixedOnly);
    ExactMatrix m = mixed_product_matrix(f, cols, rows);
    auto basis = nullspace(m);
    if (basis.empty()) return std::nullopt;

    BiPoly g = from_coefficients(f.field(), cols, basis.front());
    g = g * g.leading().second.inv();
    BiPoly product = f * g;
    if (!is_harmonic(product)) throw std::logic_error("nullspace vector is not a witness");
    return HarmonicMultipleWitness{f, g, product};
}

FischerOutcome fischer_solve(const BiPoly& f, const BiPoly& phi,
                             std::optional<int> max_cofactor_deg) {
    if (f.total_degree() < 1)
        throw std::invalid_argument("fischer_solve: divisor must be nonconstant");
    int K = max_cofactor_deg.value_or(std::max(phi.total_degree() - f.total_degree(), 0));
    if (K < 0) throw std::invalid_argument("negative cofactor degree bound");

    auto cols = canonical_monomials(K, MonomialFilter::All);
    int row_deg = std::max(f.total_degree() + K, phi.total_degree());
    auto rows = canonical_monomials(row_deg, MonomialFilter::MixedOnly);
    ExactMatrix m = mixed_product_matrix(f, cols, rows);

    std::vector<Scalar> b;
    b.reserve(rows.size());
    for (const auto& e : rows) b.push_back(phi.coeff(e.n, e.m));

    LinearSolveReport rep = solve_report(m, b);
    if (!rep.solution) {
        BiPoly g_partial = from_coefficients(f.field(), cols, rep.partial);
        BiPoly residual = mixed_part(phi - f * g_partial);
        std::vector<Exponent> unsatisfied;
        for (const auto& [e, c] : residual.terms()) unsatisfied.push_back(e);
        return BoundedFailure{K, rep.rank_coeff, cols.size() - rep.rank_coeff, rep.rank_augmented,
                              std::move(unsatisfied)};
    }

    BiPoly g = from_coefficients(f.field(), cols, *rep.solution);
    BiPoly h = phi - f * g;
    if (!is_harmonic(h)) throw std::logic_error("solver residue is not harmonic");
    BiPoly h1(f.field()), h2(f.field());
    for (const auto& [e, c] : h.terms()) {
        if (e.m == 0)
            h1.set_coeff(e.n, 0, c);  // constants included
        else
            h2.set_coeff(0, e.m, c);
    }
    FischerDecomposition dec{f, phi, g, h1, h2};
    if (!dec.verify()) throw std::logic_error("decomposition identity failed to re-verify");
    return dec;
}

BiPoly dirichlet_ellipse(const BiPoly& boundary_xy, const BiPoly& data_xy) {
    ConicClass c = classify_conic(boundary_xy);
    if (c != ConicClass::Ellipse && c != ConicClass::Circle)
        throw std::invalid_argument("dirichlet_ellipse: boundary classifies as " + to_string(c) +
                                    ", need an ellipse or circle");
    BiPoly f = to_zw(boundary_xy);
    BiPoly phi = to_zw(data_xy);
    FischerOutcome out = fischer_solve(f, phi);
    if (!solved(out))
        throw std::logic_error("reduction against an ellipse boundary cannot fail");
    const auto& dec = std::get<FischerDecomposition>(out);
    BiPoly u = to_xy(dec.h1 + dec.h2);
    // u - data must be an exact multiple of the boundary
    exact_divide(u - data_xy, boundary_xy);
    return u;
}

// ---------------------------------------------------------------------------
// Quartic identity

namespace {

// Element of F[z,w][r,s,t] / (s^2 - F, t^2 - G): exponents of s,t stay in {0,1}.
struct RstKey {
    int r, s, t;
    auto operator<=>(const RstKey&) const = default;
};
using RstPoly = std::map<RstKey, BiPoly>;

void rst_add(RstPoly& acc, const RstKey& k, const BiPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

RstPoly rst_mul(const RstPoly& a, const RstPoly& b, const BiPoly& F, const BiPoly& G) {
    RstPoly out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            RstKey k{ka.r + kb.r, ka.s + kb.s, ka.t + kb.t};
            BiPoly c = ca * cb;
            if (k.s == 2) {
                k.s = 0;
                c = c * F;
            }
            if (k.t == 2) {
                k.t = 0;
                c = c * G;
            }
            rst_add(out, k, c);
        }
    }
    return out;
}

}  // namespace

bool RPoly::even_in_r() const {
    for (std::size_t j = 1; j < coeffs.size(); j += 2)
        if (!coeffs[j].is_zero()) return false;
    return true;
}

bool RPoly::operator==(const RPoly& o) const {
    std::size_t n = std::max(coeffs.size(), o.coeffs.size());
    for (std::size_t j = 0; j < n; ++j) {
        bool za = j >= coeffs.size() || coeffs[j].is_zero();
        bool zb = j >= o.coeffs.size() || o.coeffs[j].is_zero();
        if (za != zb) return false;
        if (!za && coeffs[j] != o.coeffs[j]) return false;
    }
    return true;
}

RPoly RPoly::operator-(const RPoly& o) const {
    FieldRef f = coeffs.empty() ? o.coeffs.front().field() : coeffs.front().field();
    RPoly d(f, static_cast<int>(std::max(coeffs.size(), o.coeffs.size())) - 1);
    for (std::size_t j = 0; j < d.coeffs.size(); ++j) {
        if (j < coeffs.size()) d.coeffs[j] += coeffs[j];
        if (j < o.coeffs.size()) d.coeffs[j] -= o.coeffs[j];
    }
    return d;
}

std::string RPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j) {
        const BiPoly& c = coeffs[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        std::string rpow = j == 0 ? "" : (j == 1 ? "r" : "r^" + std::to_string(j));
        std::string body;
        bool negative = false;
        if (c.term_count() == 1) {
            std::string cs = c.str();
            if (!cs.empty() && cs[0] == '-') {
                negative = true;
                cs = cs.substr(1);
            }
            if (cs == "1" && !rpow.empty())
                body = rpow;
            else
                body = rpow.empty() ? cs : cs + "*" + rpow;
        } else {
            body = "(" + c.str() + ")" + (rpow.empty() ? "" : "*" + rpow);
        }
        if (first) {
            os << (negative ? "-" : "") << body;
            first = false;
        } else {
            os << (negative ? " - " : " + ") << body;
        }
    }
    if (first) os << "0";
    return os.str();
}

RPoly quartic_expand(const BiPoly& F, const BiPoly& G) {
    if (!same_field(F.field(), G.field()))
        throw std::invalid_argument("quartic_expand: F, G must share a field");
    const FieldRef& field = F.field();
    BiPoly one = BiPoly::constant(Scalar::one(field));

    auto factor = [&](int sgn_s, int sgn_t) {
        RstPoly f;
        rst_add(f, {1, 0, 0}, one);
        rst_add(f, {0, 1, 0}, sgn_s > 0 ? one : -one);
        rst_add(f, {0, 0, 1}, sgn_t > 0 ? one : -one);
        return f;
    };

    RstPoly prod = rst_mul(factor(+1, +1), factor(+1, -1), F, G);
    prod = rst_mul(prod, factor(-1, +1), F, G);
    prod = rst_mul(prod, factor(-1, -1), F, G);

    RPoly out(field, 4);
    for (const auto& [k, c] : prod) {
        if (k.s != 0 || k.t != 0) throw std::logic_error("residual radical in quartic expansion");
        out.coeffs.at(static_cast<std::size_t>(k.r)) = c;
    }
    return out;
}

QuarticCheck quartic_check(const BiPoly& F, const BiPoly& G) {
    RPoly expanded = quartic_expand(F, G);
    const FieldRef& field = F.field();
    RPoly reference(field, 4);
    reference.coeffs[4] = BiPoly::constant(Scalar::one(field));
    reference.coeffs[2] = (F + G) * Scalar::from_int(field, -4);
    BiPoly diff = F - G;
    reference.coeffs[0] = diff * diff;
    RPoly difference = expanded - reference;
    return QuarticCheck{expanded, reference, difference, expanded == reference};
}

}  // namespace kslab
