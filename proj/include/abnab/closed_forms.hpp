#ifndef ABNAB_CLOSED_FORMS_HPP
#define ABNAB_CLOSED_FORMS_HPP

#include <vector>

#include "abnab/errors.hpp"
#include "abnab/factored_term.hpp"
#include "abnab/linear_form.hpp"
#include "abnab/symbol.hpp"

/* Closed-form chart restrictions written directly from the displayed
 * formulas, independent of the assembly pipeline: plain product loops
 * over explicit index ranges. */

namespace abnab::closed_forms {

namespace detail {

// prod_{h=-inf}^{d} (c+hz) / prod_{h=-inf}^{0} (c+hz), as factors.
inline void hyper_up(FactoredTerm& t, const LinearForm& c, long d) {
    if (d >= 0)
        for (long h = 1; h <= d; ++h) t.multiply_factor(c.plus_kz(h), 1);
    else
        for (long h = d + 1; h <= 0; ++h) t.multiply_factor(c.plus_kz(h), -1);
}

// the reciprocal ratio
inline void hyper_down(FactoredTerm& t, const LinearForm& c, long d) {
    if (d >= 0)
        for (long h = 1; h <= d; ++h) t.multiply_factor(c.plus_kz(h), -1);
    else
        for (long h = d + 1; h <= 0; ++h) t.multiply_factor(c.plus_kz(h), 1);
}

inline LinearForm minus_lambda(int block, long idx0) {
    LinearForm f;
    f.set(Symbol::lambda(block, static_cast<int>(idx0)), Rational(-1));
    return f;
}

// compositions of total into n nonnegative parts
inline std::vector<std::vector<long>> compositions(long total, long n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(n, 0);
    auto rec = [&](auto&& self, long pos, long remaining) -> void {
        if (pos == n - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (n > 0) rec(rec, 0, total);
    return out;
}

} // namespace abnab::closed_forms::detail

/* P^{N-1} = C^N // C^*, equivariant, chart with homogeneous coordinate
 * `chart` (1-based) nonzero, so H restricts to -lambda_chart:
 *   I_d|_chart = prod_{a=1}^{N} prod_{h=1}^{d} (lambda_a - lambda_chart + hz)^{-1}
 * times, when twisted by the anticanonical O(N),
 *   prod_{h=1}^{Nd} (-N lambda_chart + hz). */
inline FactoredTerm projective_chart_coefficient(long N, long chart, long d, bool twisted) {
    if (chart < 1 || chart > N || d < 0) throw Error("projective_chart_coefficient: bad arguments");
    FactoredTerm t = FactoredTerm::one();
    LinearForm h = detail::minus_lambda(0, chart - 1);
    for (long a = 1; a <= N; ++a) {
        LinearForm c = h;
        c.set(Symbol::lambda(0, static_cast<int>(a - 1)),
              c.coeff(Symbol::lambda(0, static_cast<int>(a - 1))) + Rational(1));
        detail::hyper_down(t, c, d);
    }
    if (twisted) detail::hyper_up(t, h.scaled(Rational(N)), N * d);
    return t;
}

/* Grassmann bundle Gr_{Gr(k,n)}(l, U^m), anticanonical twist, equivariant.
 * Chart (I, J): I a k-subset of {1..n}, J an l-subset of {1..km};
 * x_i -> -lambda^1_{I_i}, y_j -> -lambda^1_{I_{pos(J_j)}} - lambda^2_{blk(J_j)}
 * with pos(c) = ((c-1) mod k)+1 and blk(c) = ceil(c/k).  Returns the full
 * list of summands of the (d,e) coefficient restricted to the chart,
 * indexed by splittings d_1+..+d_k = d, e_1+..+e_l = e. */
inline std::vector<FactoredTerm> grassmann_bundle_chart_coefficient(
    long k, long n, long l, long m, const std::vector<long>& I, const std::vector<long>& J,
    long d, long e) {
    if (static_cast<long>(I.size()) != k || static_cast<long>(J.size()) != l)
        throw Error("grassmann_bundle_chart_coefficient: bad chart");
    std::vector<LinearForm> x(k), y(l);
    for (long i = 0; i < k; ++i) x[i] = detail::minus_lambda(0, I[i] - 1);
    for (long j = 0; j < l; ++j) {
        long c = J[j] - 1;
        y[j] = detail::minus_lambda(0, I[c % k] - 1);
        y[j].set(Symbol::lambda(1, static_cast<int>(c / k)), Rational(-1));
    }
    LinearForm twist;
    for (long i = 0; i < k; ++i) twist += x[i].scaled(Rational(n - l * m));
    for (long j = 0; j < l; ++j) twist += y[j].scaled(Rational(k * m));

    std::vector<FactoredTerm> out;
    for (const auto& ds : detail::compositions(d, k)) {
        for (const auto& es : detail::compositions(e, l)) {
            FactoredTerm t = FactoredTerm::one();
            for (long i = 0; i < k && !t.is_zero(); ++i)
                for (long j = 0; j < k; ++j) {
                    if (i == j) continue;
                    detail::hyper_up(t, x[i] - x[j], ds[i] - ds[j]);
                    if (t.is_zero()) break;
                }
            for (long i = 0; i < l && !t.is_zero(); ++i)
                for (long j = 0; j < l; ++j) {
                    if (i == j) continue;
                    detail::hyper_up(t, y[i] - y[j], es[i] - es[j]);
                    if (t.is_zero()) break;
                }
            for (long i = 0; i < k && !t.is_zero(); ++i)
                for (long a = 1; a <= n; ++a) {
                    LinearForm c = x[i];
                    c.set(Symbol::lambda(0, static_cast<int>(a - 1)),
                          c.coeff(Symbol::lambda(0, static_cast<int>(a - 1))) + Rational(1));
                    detail::hyper_down(t, c, ds[i]);
                    if (t.is_zero()) break;
                }
            for (long i = 0; i < k && !t.is_zero(); ++i)
                for (long j = 0; j < l && !t.is_zero(); ++j)
                    for (long b = 1; b <= m; ++b) {
                        LinearForm c = y[j] - x[i];
                        c.set(Symbol::lambda(1, static_cast<int>(b - 1)),
                              c.coeff(Symbol::lambda(1, static_cast<int>(b - 1))) + Rational(1));
                        detail::hyper_down(t, c, es[j] - ds[i]);
                        if (t.is_zero()) break;
                    }
            if (!t.is_zero()) detail::hyper_up(t, twist, (n - l * m) * d + k * m * e);
            if (!t.is_zero()) out.push_back(std::move(t));
        }
    }
    return out;
}

} // namespace abnab::closed_forms

#endif
