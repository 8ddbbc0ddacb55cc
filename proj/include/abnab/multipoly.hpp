#ifndef ABNAB_MULTIPOLY_HPP
#define ABNAB_MULTIPOLY_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "abnab/errors.hpp"
#include "abnab/linear_form.hpp"
#include "abnab/rational.hpp"
#include "abnab/symbol.hpp"

namespace abnab {

/* Sparse multivariate polynomial with rational coefficients.  The z
 * variable participates as the ordinary symbol Symbol::z().  Exponent
 * keys are ordered maps, so iteration order is deterministic. */
class MultiPolynomial {
  public:
    using Monomial = std::map<Symbol, int>;

    MultiPolynomial() = default;
    explicit MultiPolynomial(const Rational& c) {
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    static MultiPolynomial from_linear(const LinearForm& f) {
        MultiPolynomial p;
        for (const auto& [s, c] : f.coeffs()) p.terms_[Monomial{{s, 1}}] = c;
        if (f.z_mult() != 0) p.terms_[Monomial{{Symbol::z(), 1}}] = Rational(f.z_mult());
        return p;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPolynomial& operator+=(const MultiPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPolynomial& operator-=(const MultiPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPolynomial operator+(MultiPolynomial a, const MultiPolynomial& b) { return a += b; }
    friend MultiPolynomial operator-(MultiPolynomial a, const MultiPolynomial& b) { return a -= b; }

    static MultiPolynomial mul(const MultiPolynomial& a, const MultiPolynomial& b,
                               size_t term_limit = kDefaultTermLimit) {
        MultiPolynomial r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (const auto& [s, e] : mb) {
                    auto it = m.find(s);
                    if (it == m.end())
                        m[s] = e;
                    else
                        it->second += e;
                }
                r.add_term(m, ca * cb);
                if (r.terms_.size() > term_limit)
                    throw SizeLimitExceeded("MultiPolynomial: term limit exceeded");
            }
        }
        return r;
    }
    friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
        return mul(a, b);
    }

    MultiPolynomial pow(long e, size_t term_limit = kDefaultTermLimit) const {
        if (e < 0) throw Error("MultiPolynomial: negative power");
        MultiPolynomial r(Rational(1));
        for (long i = 0; i < e; ++i) r = mul(r, *this, term_limit);
        return r;
    }

    friend bool operator==(const MultiPolynomial& a, const MultiPolynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPolynomial& a, const MultiPolynomial& b) { return !(a == b); }

    /* Exact division by a nonzero linear form.  Throws if the division
     * leaves a remainder. */
    MultiPolynomial divided_by_linear(const LinearForm& f) const {
        if (f.is_zero()) throw Error("divided_by_linear: zero form");
        // pivot: the largest symbol appearing in f (z counts)
        Symbol pivot = Symbol::z();
        Rational pivot_coeff(f.z_mult());
        if (!f.coeffs().empty() && (f.z_mult() == 0 || Symbol::z() < f.coeffs().rbegin()->first)) {
            pivot = f.coeffs().rbegin()->first;
            pivot_coeff = f.coeffs().rbegin()->second;
        }
        // g = f - pivot_coeff * pivot (free of pivot)
        MultiPolynomial g = from_linear(f);
        g.add_term(Monomial{{pivot, 1}}, -pivot_coeff);

        // split this by pivot degree
        std::map<int, MultiPolynomial> layers;
        int maxdeg = 0;
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            int d = 0;
            auto it = rest.find(pivot);
            if (it != rest.end()) {
                d = it->second;
                rest.erase(it);
            }
            layers[d].add_term(rest, c);
            if (d > maxdeg) maxdeg = d;
        }
        Rational inv = pivot_coeff.inverse();
        MultiPolynomial quotient;
        for (int d = maxdeg; d >= 1; --d) {
            MultiPolynomial qd;
            for (const auto& [m, c] : layers[d].terms_) qd.add_term(m, c * inv);
            // quotient += qd * pivot^(d-1)
            for (const auto& [m, c] : qd.terms_) {
                Monomial mm = m;
                if (d - 1 > 0) mm[pivot] = d - 1;
                quotient.add_term(mm, c);
            }
            layers[d - 1] -= qd * g;
            layers[d] = MultiPolynomial();
        }
        if (!layers[0].is_zero()) throw Error("divided_by_linear: nonzero remainder");
        return quotient;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string mono;
            for (const auto& [s, e] : m) {
                if (!mono.empty()) mono += "*";
                mono += s.str();
                if (e != 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty())
                out += c.str();
            else if (c.is_one())
                out += mono;
            else
                out += c.str() + "*" + mono;
        }
        return out;
    }

    static constexpr size_t kDefaultTermLimit = 1000000;

  private:
    std::map<Monomial, Rational> terms_;
};

} // namespace abnab

#endif
