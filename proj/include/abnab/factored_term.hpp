#ifndef ABNAB_FACTORED_TERM_HPP
#define ABNAB_FACTORED_TERM_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/linear_form.hpp"
#include "abnab/multipoly.hpp"
#include "abnab/rational.hpp"
#include "abnab/symbol.hpp"
#include "abnab/zpoly.hpp"

namespace abnab {

template <class F>
F field_pow(F base, long e) {
    if (e < 0) {
        base = base.inverse();
        e = -e;
    }
    F acc(1);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/* scalar * prod_f f^e(f) with linear-form factors and integer exponents.
 * Positive exponents are numerator factors, negative denominator ones.
 * The canonical zero term has scalar 0 and no factors. */
class FactoredTerm {
  public:
    FactoredTerm() : scalar_(0) {}
    explicit FactoredTerm(Rational scalar) : scalar_(std::move(scalar)) {}
    static FactoredTerm one() { return FactoredTerm(Rational(1)); }
    static FactoredTerm zero() { return FactoredTerm(); }

    bool is_zero() const { return scalar_.is_zero(); }
    const Rational& scalar() const { return scalar_; }
    const std::map<LinearForm, long>& factors() const { return factors_; }

    // Net degree D = sum of all factor exponents.
    long net_degree() const {
        long d = 0;
        for (const auto& [f, e] : factors_) d += e;
        return d;
    }

    void multiply_scalar(const Rational& c) {
        scalar_ *= c;
        if (scalar_.is_zero()) factors_.clear();
    }

    void multiply_factor(const LinearForm& f, long e) {
        if (is_zero() || e == 0) return;
        if (f.is_zero()) {
            if (e < 0) throw Error("FactoredTerm: zero form in denominator");
            *this = zero();
            return;
        }
        auto it = factors_.find(f);
        if (it == factors_.end()) {
            factors_[f] = e;
        } else {
            it->second += e;
            if (it->second == 0) factors_.erase(it);
        }
    }

    FactoredTerm& operator*=(const FactoredTerm& o) {
        multiply_scalar(o.scalar_);
        if (is_zero()) return *this;
        for (const auto& [f, e] : o.factors_) multiply_factor(f, e);
        return *this;
    }
    friend FactoredTerm operator*(FactoredTerm a, const FactoredTerm& b) { return a *= b; }

    FactoredTerm inverted() const {
        if (is_zero()) throw Error("FactoredTerm: inverse of zero");
        FactoredTerm r(scalar_.inverse());
        for (const auto& [f, e] : factors_) r.factors_[f] = -e;
        return r;
    }

    friend bool operator==(const FactoredTerm& a, const FactoredTerm& b) {
        return a.scalar_ == b.scalar_ && a.factors_ == b.factors_;
    }
    friend bool operator!=(const FactoredTerm& a, const FactoredTerm& b) { return !(a == b); }

    /* Replace every symbol by t times itself (z included).  Each linear
     * factor scales by t, so the result is t^D times the original with the
     * factors untouched. */
    FactoredTerm scale_symbols(const Rational& t) const {
        if (t.is_zero()) throw ZeroScale("scale_symbols: t = 0");
        FactoredTerm r = *this;
        if (!r.is_zero()) r.scalar_ *= Rational::pow(t, net_degree());
        return r;
    }

    // Numerator and denominator expanded separately; no cross reduction.
    std::pair<MultiPolynomial, MultiPolynomial> expand(
        size_t term_limit = MultiPolynomial::kDefaultTermLimit) const {
        MultiPolynomial num(scalar_);
        MultiPolynomial den(Rational(1));
        if (is_zero()) return {MultiPolynomial(), den};
        for (const auto& [f, e] : factors_) {
            auto p = MultiPolynomial::from_linear(f).pow(e > 0 ? e : -e, term_limit);
            if (e > 0)
                num = MultiPolynomial::mul(num, p, term_limit);
            else
                den = MultiPolynomial::mul(den, p, term_limit);
        }
        return {num, den};
    }

    /* Substitute Chern-root symbols by linear forms (fixed-point
     * restriction).  A vanishing numerator factor kills the term; a
     * vanishing denominator factor is a genuine pole. */
    FactoredTerm substituted(const std::map<Symbol, LinearForm>& assignment) const {
        if (is_zero()) return zero();
        FactoredTerm r(scalar_);
        for (const auto& [f, e] : factors_) {
            LinearForm g = f.substituted(assignment);
            if (g.is_zero() && e < 0)
                throw PoleAtSpecialization("substituted: zero denominator form " + f.str());
            r.multiply_factor(g, e);
            if (r.is_zero()) return r;
        }
        return r;
    }

    /* Apply an integer matrix to the Chern-root part of every factor:
     * the coefficient vector (read off along coord_symbols) maps to M*v.
     * Realizes the Weyl action on characters. */
    FactoredTerm transformed_chern(const std::vector<std::vector<long>>& m,
                                   const std::vector<Symbol>& coord_symbols) const {
        if (is_zero()) return zero();
        size_t r = coord_symbols.size();
        FactoredTerm out(scalar_);
        for (const auto& [f, e] : factors_) {
            std::vector<Rational> v(r, Rational(0));
            LinearForm g = LinearForm::z_times(f.z_mult());
            for (const auto& [s, c] : f.coeffs()) {
                bool is_coord = false;
                for (size_t i = 0; i < r; ++i) {
                    if (s == coord_symbols[i]) {
                        v[i] = c;
                        is_coord = true;
                        break;
                    }
                }
                if (!is_coord) g.set(s, c);
            }
            for (size_t i = 0; i < r; ++i) {
                Rational acc(0);
                for (size_t j = 0; j < r; ++j) acc += Rational(m[i][j]) * v[j];
                g.set(coord_symbols[i], g.coeff(coord_symbols[i]) + acc);
            }
            out.multiply_factor(g, e);
        }
        return out;
    }

    /* Exact evaluation over a field F.  Every non-z symbol of the term
     * must be assigned; z maps to z_image. */
    template <class F>
    F evaluate(const std::map<Symbol, F>& assignment, const F& z_image) const {
        if (is_zero()) return F(0);
        F acc = F(scalar_);
        for (const auto& [f, e] : factors_) {
            F val = F(Rational(0));
            for (const auto& [s, c] : f.coeffs()) {
                auto it = assignment.find(s);
                if (it == assignment.end())
                    throw Error("evaluate: unassigned symbol " + s.str());
                val = val + F(c) * it->second;
            }
            if (f.z_mult() != 0) val = val + F(Rational(f.z_mult())) * z_image;
            if (val.is_zero()) {
                if (e < 0)
                    throw PoleAtSpecialization("evaluate: denominator form vanishes: " + f.str());
                return F(0);
            }
            acc = acc * field_pow(val, e);
        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string num, den;
        for (const auto& [f, e] : factors_) {
            std::string piece = "(" + f.str() + ")";
            long a = e > 0 ? e : -e;
            if (a != 1) piece += "^" + std::to_string(a);
            (e > 0 ? num : den) += piece;
        }
        std::string out;
        if (!scalar_.is_one() || num.empty()) out = scalar_.str();
        if (!num.empty()) out += (out.empty() ? "" : "*") + num;
        if (!den.empty()) out += " / " + den;
        return out;
    }

  private:
    Rational scalar_;
    std::map<LinearForm, long> factors_;
};

} // namespace abnab

#endif
