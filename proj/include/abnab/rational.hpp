#ifndef ABNAB_RATIONAL_HPP
#define ABNAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "abnab/errors.hpp"

namespace abnab {

/* Arbitrary-precision rational, always canonical: gcd(num,den)=1, den>0,
 * zero is 0/1.  Thin wrapper over mpq_class so construction and
 * serialization are controlled in one place. */
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw Error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    // Parses "p/q" or "p" (decimal strings).
    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw SchemaError("bad rational: " + s);
        if (q.get_den() == 0) throw SchemaError("zero denominator: " + s);
        q.canonicalize();
        return Rational(q);
    }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    // Integer test / extraction (used where the math requires integers).
    bool is_integer() const { return v_.get_den() == 1; }
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw Error("Rational: not a machine integer: " + str());
        return v_.get_num().get_si();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

    Rational inverse() const {
        if (is_zero()) throw Error("Rational: inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    // t^e for integer e (e may be negative; t nonzero then).
    static Rational pow(const Rational& t, long e) {
        if (e == 0) return Rational(1);
        Rational base = e > 0 ? t : t.inverse();
        unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
        mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
        mpq_class r(n, d);
        r.canonicalize();
        return Rational(r);
    }

  private:
    mpq_class v_;
};

} // namespace abnab

#endif
