#ifndef ABNAB_LINEAR_FORM_HPP
#define ABNAB_LINEAR_FORM_HPP

#include <map>
#include <string>
#include <utility>

#include "abnab/rational.hpp"
#include "abnab/symbol.hpp"

namespace abnab {

/* Affine-linear expression  sum_i c_i * sym_i + k*z  with rational c_i and
 * integer k.  Every formula factor in scope has this shape.  No zero
 * coefficients are stored; equality is exact map equality. */
class LinearForm {
  public:
    LinearForm() = default;

    static LinearForm symbol(const Symbol& s, Rational c = Rational(1)) {
        LinearForm f;
        f.set(s, std::move(c));
        return f;
    }
    static LinearForm z_times(long k) {
        LinearForm f;
        f.z_mult_ = k;
        return f;
    }

    void set(const Symbol& s, Rational c) {
        if (c.is_zero())
            coeffs_.erase(s);
        else
            coeffs_[s] = std::move(c);
    }
    Rational coeff(const Symbol& s) const {
        auto it = coeffs_.find(s);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    const std::map<Symbol, Rational>& coeffs() const { return coeffs_; }
    long z_mult() const { return z_mult_; }
    void set_z_mult(long k) { z_mult_ = k; }

    bool is_zero() const { return coeffs_.empty() && z_mult_ == 0; }
    bool is_z_free() const { return z_mult_ == 0; }

    LinearForm& operator+=(const LinearForm& o) {
        for (const auto& [s, c] : o.coeffs_) set(s, coeff(s) + c);
        z_mult_ += o.z_mult_;
        return *this;
    }
    LinearForm& operator-=(const LinearForm& o) {
        for (const auto& [s, c] : o.coeffs_) set(s, coeff(s) - c);
        z_mult_ -= o.z_mult_;
        return *this;
    }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator-(const LinearForm& a) {
        LinearForm r;
        return r -= a;
    }

    LinearForm plus_kz(long k) const {
        LinearForm r = *this;
        r.z_mult_ += k;
        return r;
    }

    // Scalar multiple; t may be any rational but z stays integer only when
    // t * z_mult is an integer, which callers must guarantee.
    LinearForm scaled(const Rational& t) const {
        LinearForm r;
        if (t.is_zero()) return r;
        for (const auto& [s, c] : coeffs_) r.coeffs_[s] = c * t;
        Rational zc = Rational(z_mult_) * t;
        r.z_mult_ = zc.to_long();
        return r;
    }

    /* Substitute Chern-root symbols by the given forms; other symbols pass
     * through.  Used for fixed-point restriction. */
    LinearForm substituted(const std::map<Symbol, LinearForm>& assignment) const {
        LinearForm r = LinearForm::z_times(z_mult_);
        for (const auto& [s, c] : coeffs_) {
            auto it = assignment.find(s);
            if (it == assignment.end()) {
                r.set(s, r.coeff(s) + c);
            } else {
                for (const auto& [s2, c2] : it->second.coeffs_) r.set(s2, r.coeff(s2) + c * c2);
                Rational zc = Rational(r.z_mult_) + c * Rational(it->second.z_mult_);
                r.z_mult_ = zc.to_long();
            }
        }
        return r;
    }

    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.z_mult_ == b.z_mult_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LinearForm& a, const LinearForm& b) { return !(a == b); }
    friend bool operator<(const LinearForm& a, const LinearForm& b) {
        if (a.z_mult_ != b.z_mult_) return a.z_mult_ < b.z_mult_;
        return a.coeffs_ < b.coeffs_;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [s, c] : coeffs_) {
            std::string cs = c.str();
            if (first) {
                if (cs == "1")
                    out += s.str();
                else if (cs == "-1")
                    out += "-" + s.str();
                else
                    out += cs + "*" + s.str();
            } else {
                if (cs == "1")
                    out += " + " + s.str();
                else if (cs == "-1")
                    out += " - " + s.str();
                else if (c.sign() < 0)
                    out += " - " + (-c).str() + "*" + s.str();
                else
                    out += " + " + cs + "*" + s.str();
            }
            first = false;
        }
        if (z_mult_ != 0) {
            std::string zs = z_mult_ == 1 ? "z" : z_mult_ == -1 ? "-z"
                                                : std::to_string(z_mult_) + "*z";
            if (first)
                out += zs;
            else if (z_mult_ == 1)
                out += " + z";
            else if (z_mult_ == -1)
                out += " - z";
            else if (z_mult_ < 0)
                out += " - " + std::to_string(-z_mult_) + "*z";
            else
                out += " + " + std::to_string(z_mult_) + "*z";
        }
        return out;
    }

  private:
    std::map<Symbol, Rational> coeffs_;
    long z_mult_ = 0;
};

} // namespace abnab

#endif
