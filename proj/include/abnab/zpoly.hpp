#ifndef ABNAB_ZPOLY_HPP
#define ABNAB_ZPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/rational.hpp"

namespace abnab {

/* Dense univariate polynomial over a field F.  F must provide
 * F(long), +,-,*,/, ==, is_zero(), inverse().  Instantiated with Rational
 * (polynomials in z) and with ZRationalFunction (polynomials in a probe
 * parameter t over the field Q(z)). */
template <class F>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(F c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    static Polynomial var() { return Polynomial(std::vector<F>{F(0), F(1)}); }
    explicit Polynomial(std::vector<F> c) : c_(std::move(c)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial reported as -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    const F& leading() const { return c_.back(); }

    Polynomial& operator+=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r;
        return r -= a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const F& s) const {
        std::vector<F> r = c_;
        for (auto& x : r) x = x * s;
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Euclidean division; divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(Polynomial num, const Polynomial& den) {
        if (den.is_zero()) throw Error("Polynomial: division by zero");
        Polynomial q;
        q.c_.assign(num.c_.size(), F(0));
        F lead_inv = den.leading().inverse();
        while (!num.is_zero() && num.degree() >= den.degree()) {
            long shift = num.degree() - den.degree();
            F factor = num.leading() * lead_inv;
            q.c_[static_cast<size_t>(shift)] = q.c_[static_cast<size_t>(shift)] + factor;
            // num -= factor * x^shift * den
            for (size_t i = 0; i < den.c_.size(); ++i) {
                size_t k = i + static_cast<size_t>(shift);
                num.c_[k] = num.c_[k] - factor * den.c_[i];
            }
            num.trim();
        }
        q.trim();
        return {q, num};
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    F evaluate(const F& x) const {
        F acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    std::string str(const std::string& var_name) const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string cs = c_[i].str();
            if (i == 0) {
                out += cs;
            } else {
                std::string mono = i == 1 ? var_name : var_name + "^" + std::to_string(i);
                out += (cs == "1") ? mono : cs + "*" + mono;
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<F> c_;
};

/* Reduced fraction of univariate polynomials over F: gcd(num,den)=1 and
 * den monic, so the representation is canonical. */
template <class F>
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(F(1)) {}
    RationalFunction(long v) : num_(F(v)), den_(F(1)) {} // NOLINT(google-explicit-constructor)
    RationalFunction(F c) : num_(std::move(c)), den_(F(1)) {} // NOLINT
    RationalFunction(Polynomial<F> num, Polynomial<F> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error("RationalFunction: zero denominator");
        reduce();
    }
    static RationalFunction var() { return RationalFunction(Polynomial<F>::var(), Polynomial<F>(F(1))); }

    const Polynomial<F>& num() const { return num_; }
    const Polynomial<F>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        return RationalFunction(-a.num_, a.den_);
    }

    RationalFunction inverse() const {
        if (is_zero()) throw Error("RationalFunction: inverse of zero");
        return RationalFunction(den_, num_);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str(const std::string& var_name = "z") const {
        if (is_polynomial()) return num_.str(var_name);
        return "(" + num_.str(var_name) + ")/(" + den_.str(var_name) + ")";
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial<F>(F(1));
            return;
        }
        auto g = Polynomial<F>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial<F>::divmod(num_, g).first;
            den_ = Polynomial<F>::divmod(den_, g).first;
        }
        F lead_inv = den_.leading().inverse();
        num_ = num_.scaled(lead_inv);
        den_ = den_.scaled(lead_inv);
    }
    Polynomial<F> num_;
    Polynomial<F> den_;
};

using ZPoly = Polynomial<Rational>;
using ZRationalFunction = RationalFunction<Rational>;

} // namespace abnab

#endif
