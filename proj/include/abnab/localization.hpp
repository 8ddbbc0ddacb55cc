#ifndef ABNAB_LOCALIZATION_HPP
#define ABNAB_LOCALIZATION_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/factored_term.hpp"
#include "abnab/ifunction.hpp"
#include "abnab/multipoly.hpp"
#include "abnab/presentation.hpp"
#include "abnab/specialization.hpp"
#include "abnab/zpoly.hpp"

namespace abnab {

/* An isolated S-fixed point: every Chern-root symbol is assigned a linear
 * form in the equivariant parameters, and the tangent weights there are
 * recorded for Atiyah-Bott integration. */
struct FixedPointChart {
    std::string label;
    std::map<Symbol, LinearForm> root_assignment;
    std::vector<LinearForm> tangent_weights;
};

/* A cohomology class carried by its chart restrictions, each a finite sum
 * of factored terms in the lambda symbols and z. */
struct LocalizedClass {
    std::map<std::string, std::vector<FactoredTerm>> restrictions;
};

// Substitute the chart assignment into every summand; zero terms dropped.
inline std::vector<FactoredTerm> restrict_terms(const std::vector<FactoredTerm>& terms,
                                                const FixedPointChart& chart) {
    for (const auto& t : terms)
        for (const auto& [f, e] : t.factors())
            for (const auto& [s, c] : f.coeffs())
                if (s.kind == SymbolKind::ChernRoot && !chart.root_assignment.count(s))
                    throw Error("restrict: chart does not assign symbol " + s.str());
    std::vector<FactoredTerm> out;
    for (const auto& t : terms) {
        FactoredTerm r = t.substituted(chart.root_assignment);
        if (!r.is_zero()) out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<FactoredTerm> restrict_coefficient(const IFunctionCoefficient& coeff,
                                                      const FixedPointChart& chart) {
    return restrict_terms(coeff.summand_list(), chart);
}

inline LocalizedClass localize(const IFunctionCoefficient& coeff,
                               const std::vector<FixedPointChart>& charts) {
    LocalizedClass cls;
    for (const auto& c : charts) cls.restrictions[c.label] = restrict_coefficient(coeff, c);
    return cls;
}

inline LocalizedClass localized_unit(const std::vector<FixedPointChart>& charts) {
    LocalizedClass cls;
    for (const auto& c : charts) cls.restrictions[c.label] = {FactoredTerm::one()};
    return cls;
}

// e(Tangent): restriction at each chart is the product of tangent weights.
inline LocalizedClass localized_tangent_euler(const std::vector<FixedPointChart>& charts) {
    LocalizedClass cls;
    for (const auto& c : charts) {
        FactoredTerm t = FactoredTerm::one();
        for (const auto& w : c.tangent_weights) t.multiply_factor(w, 1);
        cls.restrictions[c.label] = {t};
    }
    return cls;
}

namespace detail {
inline std::set<Symbol> chart_symbols(const LocalizedClass& cls,
                                      const std::vector<FixedPointChart>& charts) {
    std::set<Symbol> syms;
    for (const auto& [label, terms] : cls.restrictions) {
        auto s = collect_symbols(terms);
        syms.insert(s.begin(), s.end());
    }
    for (const auto& c : charts)
        for (const auto& w : c.tangent_weights)
            for (const auto& [s, coeff] : w.coeffs()) syms.insert(s);
    return syms;
}
} // namespace detail

/* Atiyah-Bott: sum over charts of restriction / product of tangent
 * weights, at a generic lambda specialization (re-drawn on poles). */
inline ZRationalFunction integrate(const LocalizedClass& cls,
                                   const std::vector<FixedPointChart>& charts,
                                   std::mt19937_64& rng, int retries = 32) {
    std::set<Symbol> syms = detail::chart_symbols(cls, charts);
    std::vector<FactoredTerm> all_terms;
    for (const auto& c : charts) {
        auto it = cls.restrictions.find(c.label);
        if (it == cls.restrictions.end()) throw Error("integrate: missing restriction at " + c.label);
        for (const auto& t : it->second) all_terms.push_back(t);
        FactoredTerm tangent_inv = FactoredTerm::one();
        for (const auto& w : c.tangent_weights) tangent_inv.multiply_factor(w, -1);
        all_terms.push_back(tangent_inv);
    }
    Specialization s = draw_generic(syms, all_terms, rng, retries);
    ZRationalFunction acc(Rational(0));
    for (const auto& c : charts) {
        const auto& terms = cls.restrictions.at(c.label);
        ZRationalFunction val = sum_evaluate(terms, s);
        FactoredTerm tangent_inv = FactoredTerm::one();
        for (const auto& w : c.tangent_weights) tangent_inv.multiply_factor(w, -1);
        acc = acc + val * evaluate_factored(tangent_inv, s);
    }
    return acc;
}

/* Probabilistic-exact equality through restrictions: agreement of every
 * chart restriction at (degree bound + 1) independent generic draws. */
inline bool classes_equal(const LocalizedClass& a, const LocalizedClass& b, std::mt19937_64& rng,
                          int min_draws = 3) {
    if (a.restrictions.size() != b.restrictions.size()) return false;
    long zdeg = 0;
    for (const auto* cls : {&a, &b})
        for (const auto& [label, terms] : cls->restrictions)
            for (const auto& t : terms) {
                long d = 0;
                for (const auto& [f, e] : t.factors()) d += (e > 0 ? e : -e);
                zdeg = std::max(zdeg, d);
            }
    int draws = std::max<long>(min_draws, zdeg + 1);
    for (const auto& [label, terms_a] : a.restrictions) {
        auto it = b.restrictions.find(label);
        if (it == b.restrictions.end()) return false;
        const auto& terms_b = it->second;
        std::set<Symbol> syms = collect_symbols(terms_a);
        auto sb = collect_symbols(terms_b);
        syms.insert(sb.begin(), sb.end());
        std::vector<FactoredTerm> all = terms_a;
        all.insert(all.end(), terms_b.begin(), terms_b.end());
        for (int i = 0; i < draws; ++i) {
            Specialization s = draw_generic(syms, all, rng);
            if (sum_evaluate(terms_a, s) != sum_evaluate(terms_b, s)) return false;
        }
    }
    return true;
}

/* Weyl symmetrization of f / prod c_1(L_alpha) over the given coset
 * representatives (acting on the Chern-root symbols). */
inline std::vector<FactoredTerm> brion_pushforward(const FactoredTerm& f,
                                                   const std::vector<LinearForm>& positive_roots_outside_l,
                                                   const std::vector<IntMat>& coset_reps,
                                                   const std::vector<Symbol>& coord_symbols) {
    FactoredTerm base = f;
    for (const auto& a : positive_roots_outside_l) base.multiply_factor(a, -1);
    std::vector<FactoredTerm> out;
    for (const auto& w : coset_reps) out.push_back(base.transformed_chern(w, coord_symbols));
    return out;
}

/* Product of the lifted weight forms excluded from V_{beta tilde}, i.e.
 * those with lift(xi_j) < 0:  e_S(V^s x_P V) / e_S(V^s x_P V_beta). */
inline FactoredTerm euler_ratio(const GitPresentation& p, const DegreeLift& lift,
                                bool equivariant = true) {
    FactoredTerm t = FactoredTerm::one();
    for (size_t j = 0; j < p.weights_v.size(); ++j)
        if (p.pairing(lift, p.weights_v[j]) < 0)
            t.multiply_factor(p.lift_weight(j, equivariant && p.equivariant_capable()), 1);
    return t;
}

/* ---- exact expansion of a sum of factored terms ---------------------- */

/* Sum over the common denominator, with linear factors divided back out
 * of the numerator where the division is exact.  den is a multiset of
 * linear forms; a fully cancelled sum has an empty den. */
struct ExpandedRational {
    MultiPolynomial num;
    std::map<LinearForm, long> den;
    bool is_polynomial() const { return den.empty(); }
};

inline ExpandedRational expand_sum(const std::vector<FactoredTerm>& terms,
                                   size_t term_limit = MultiPolynomial::kDefaultTermLimit) {
    // common denominator: per-form maximum multiplicity
    std::map<LinearForm, long> common;
    for (const auto& t : terms)
        for (const auto& [f, e] : t.factors())
            if (e < 0) common[f] = std::max(common[f], -e);
    MultiPolynomial num;
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        MultiPolynomial part(t.scalar());
        for (const auto& [f, e] : t.factors())
            if (e > 0) part = MultiPolynomial::mul(part, MultiPolynomial::from_linear(f).pow(e, term_limit), term_limit);
        for (const auto& [f, m] : common) {
            long have = 0;
            auto it = t.factors().find(f);
            if (it != t.factors().end() && it->second < 0) have = -it->second;
            if (m - have > 0)
                part = MultiPolynomial::mul(part, MultiPolynomial::from_linear(f).pow(m - have, term_limit), term_limit);
        }
        num += part;
    }
    ExpandedRational out;
    out.num = std::move(num);
    out.den = std::move(common);
    // cancel denominator factors that divide exactly
    for (auto it = out.den.begin(); it != out.den.end();) {
        while (it->second > 0) {
            try {
                out.num = out.num.divided_by_linear(it->first);
                --it->second;
            } catch (const Error&) {
                break;
            }
        }
        it = it->second == 0 ? out.den.erase(it) : std::next(it);
    }
    return out;
}

/* ---- lambda-pole probe ----------------------------------------------- */

/* Decide whether the sum of `terms` has a pole along the hyperplane
 * f = 0 (f a z-free linear form): restrict lambda to a generic line
 * hitting the hyperplane at probe parameter t = 0 and test whether t
 * divides the denominator of the exact sum over Q(z). */
struct PoleProbeResult {
    LinearForm form;
    bool pole_free = false;
};

namespace detail {
// Univariate rational functions in the line parameter t, over the rationals.
using ProbeField = ZRationalFunction;

inline LinearForm normalized_direction(const LinearForm& f) {
    Rational lead(0);
    if (!f.coeffs().empty())
        lead = f.coeffs().begin()->second;
    else
        lead = Rational(f.z_mult());
    LinearForm r;
    for (const auto& [s, c] : f.coeffs()) r.set(s, c / lead);
    // z-free forms only are probed, but keep generality
    if (f.z_mult() != 0) {
        Rational zc = Rational(f.z_mult()) / lead;
        r.set_z_mult(zc.to_long());
    }
    return r;
}
} // namespace detail

inline PoleProbeResult probe_pole(const std::vector<FactoredTerm>& terms, const LinearForm& f,
                                  std::mt19937_64& rng, int retries = 32) {
    if (f.is_zero() || f.z_mult() != 0) throw Error("probe_pole: need a nonzero z-free form");
    using detail::ProbeField;
    std::set<Symbol> syms = collect_symbols(terms);
    for (const auto& [s, c] : f.coeffs()) syms.insert(s);
    Symbol pivot = f.coeffs().begin()->first;
    Rational pivot_coeff = f.coeffs().begin()->second;
    std::uniform_int_distribution<long> dist(-10000, 10000);

    for (int attempt = 0; attempt < retries; ++attempt) {
        std::map<Symbol, Rational> base, dir;
        for (const Symbol& s : syms) {
            base[s] = Rational(dist(rng));
            dir[s] = Rational(dist(rng));
        }
        // place the base point on f = 0
        Rational rest(0);
        for (const auto& [s, c] : f.coeffs())
            if (s != pivot) rest += c * base[s];
        base[pivot] = -rest / pivot_coeff;
        // the direction must leave the hyperplane
        Rational fdir(0);
        for (const auto& [s, c] : f.coeffs()) fdir += c * dir[s];
        if (fdir.is_zero()) continue;

        // z is specialized to a random nonzero rational: a pole along f is a
        // nonzero residue depending rationally on z, so a generic z detects it.
        long zval = dist(rng);
        if (zval == 0) zval = 1;
        std::map<Symbol, ProbeField> assign;
        for (const Symbol& s : syms)
            assign.emplace(s, ProbeField(ZPoly(std::vector<Rational>{base[s], dir[s]}),
                                         ZPoly(Rational(1))));
        ProbeField z_image((Rational(zval)));
        try {
            ProbeField sum(0);
            for (const auto& t : terms) sum = sum + t.evaluate<ProbeField>(assign, z_image);
            PoleProbeResult r;
            r.form = f;
            r.pole_free = sum.is_zero() || !sum.den().coeff(0).is_zero();
            return r;
        } catch (const PoleAtSpecialization&) {
            continue; // some other denominator degenerated on this line
        }
    }
    throw PoleAtSpecialization("probe_pole: no generic probe line found");
}

// All z-free denominator directions appearing across the terms.
inline std::vector<LinearForm> lambda_pole_candidates(const std::vector<FactoredTerm>& terms) {
    std::set<LinearForm> seen;
    for (const auto& t : terms)
        for (const auto& [f, e] : t.factors())
            if (e < 0 && f.is_z_free() && !f.is_zero()) {
                LinearForm n = detail::normalized_direction(f);
                // identify f with -f: normalize so the leading coefficient is +1
                seen.insert(n);
            }
    return {seen.begin(), seen.end()};
}

/* True iff the sum of the restricted terms has no pole along any z-free
 * denominator hyperplane. */
inline bool restriction_pole_free(const std::vector<FactoredTerm>& terms, std::mt19937_64& rng) {
    for (const auto& f : lambda_pole_candidates(terms))
        if (!probe_pole(terms, f, rng).pole_free) return false;
    return true;
}

} // namespace abnab

#endif
