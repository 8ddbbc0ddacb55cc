#ifndef ABNAB_SPECIALIZATION_HPP
#define ABNAB_SPECIALIZATION_HPP

#include <map>
#include <random>
#include <set>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/factored_term.hpp"
#include "abnab/rational.hpp"
#include "abnab/symbol.hpp"
#include "abnab/zpoly.hpp"

namespace abnab {

/* Total assignment of rationals to every non-z symbol in scope.  Generic
 * points are drawn uniformly from integers in [-10^4, 10^4]. */
struct Specialization {
    std::map<Symbol, Rational> assignments;

    static Specialization draw(const std::set<Symbol>& symbols, std::mt19937_64& rng) {
        std::uniform_int_distribution<long> dist(-10000, 10000);
        Specialization s;
        for (const Symbol& sym : symbols) {
            if (sym.kind == SymbolKind::ZVariable) continue;
            s.assignments[sym] = Rational(dist(rng));
        }
        return s;
    }
};

inline std::set<Symbol> collect_symbols(const FactoredTerm& t) {
    std::set<Symbol> out;
    for (const auto& [f, e] : t.factors())
        for (const auto& [s, c] : f.coeffs()) out.insert(s);
    return out;
}

inline std::set<Symbol> collect_symbols(const std::vector<FactoredTerm>& ts) {
    std::set<Symbol> out;
    for (const auto& t : ts) {
        auto s = collect_symbols(t);
        out.insert(s.begin(), s.end());
    }
    return out;
}

/* Substitute a specialization, leaving z symbolic.  Numerator and
 * denominator are accumulated as univariate polynomials and reduced once
 * at the end. */
inline ZRationalFunction evaluate_factored(const FactoredTerm& term, const Specialization& s) {
    if (term.is_zero()) return ZRationalFunction(Rational(0));
    ZPoly num(term.scalar());
    ZPoly den(Rational(1));
    for (const auto& [f, e] : term.factors()) {
        Rational a(0);
        for (const auto& [sym, c] : f.coeffs()) {
            auto it = s.assignments.find(sym);
            if (it == s.assignments.end())
                throw Error("evaluate_factored: unassigned symbol " + sym.str());
            a += c * it->second;
        }
        ZPoly lin(std::vector<Rational>{a, Rational(f.z_mult())});
        if (lin.is_zero())
            throw PoleAtSpecialization("evaluate_factored: factor vanishes: " + f.str());
        long m = e > 0 ? e : -e;
        ZPoly& target = e > 0 ? num : den;
        for (long i = 0; i < m; ++i) target *= lin;
    }
    return ZRationalFunction(num, den);
}

// Exact sum over the common denominator; order-independent by exactness.
inline ZRationalFunction sum_evaluate(const std::vector<FactoredTerm>& terms,
                                      const Specialization& s) {
    ZRationalFunction acc(Rational(0));
    for (const auto& t : terms) acc = acc + evaluate_factored(t, s);
    return acc;
}

/* Draw a specialization at which every term of `terms` evaluates without
 * hitting a pole, re-drawing up to `retries` times. */
inline Specialization draw_generic(const std::set<Symbol>& symbols,
                                   const std::vector<FactoredTerm>& terms, std::mt19937_64& rng,
                                   int retries = 32) {
    for (int attempt = 0; attempt < retries; ++attempt) {
        Specialization s = Specialization::draw(symbols, rng);
        try {
            for (const auto& t : terms) (void)evaluate_factored(t, s);
            return s;
        } catch (const PoleAtSpecialization&) {
            continue;
        }
    }
    throw PoleAtSpecialization("draw_generic: no pole-free specialization found");
}

} // namespace abnab

#endif
