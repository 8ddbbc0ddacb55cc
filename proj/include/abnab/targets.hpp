#ifndef ABNAB_TARGETS_HPP
#define ABNAB_TARGETS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/ifunction.hpp"
#include "abnab/lifts.hpp"
#include "abnab/localization.hpp"
#include "abnab/presentation.hpp"

namespace abnab {

struct BuiltTarget {
    std::string name;
    GitPresentation presentation;
    EffectiveCone cone;
    std::vector<FixedPointChart> charts;
    IntVec anticanonical;
    long fano_index = 0;
};

/* Tangent weights at a chart, from the Euler sequence: the multiset of
 * restricted V-weights minus the restricted Lie-algebra weights (roots
 * plus rank-many zeros).  Every Lie-algebra weight must cancel against a
 * matching V-weight; what remains is dim(V//G)-many nonzero forms. */
inline std::vector<LinearForm> derive_tangent_weights(const GitPresentation& p,
                                                      const std::map<Symbol, LinearForm>& assignment) {
    std::map<LinearForm, long> counts;
    for (size_t j = 0; j < p.weights_v.size(); ++j)
        counts[p.lift_weight(j, p.equivariant_capable()).substituted(assignment)] += 1;
    counts[LinearForm{}] -= p.rank_t; // Cartan directions
    for (const auto& alpha : p.roots)
        counts[p.lift_character(alpha).substituted(assignment)] -= 1;
    std::vector<LinearForm> tangent;
    for (const auto& [f, c] : counts) {
        if (c == 0) continue;
        if (c < 0) throw Error("derive_tangent_weights: Lie-algebra weight fails to cancel: " + f.str());
        if (f.is_zero()) throw Error("derive_tangent_weights: zero tangent weight at chart");
        for (long i = 0; i < c; ++i) tangent.push_back(f);
    }
    long expected = static_cast<long>(p.weights_v.size()) - p.rank_t - static_cast<long>(p.roots.size());
    if (static_cast<long>(tangent.size()) != expected)
        throw Error("derive_tangent_weights: wrong tangent dimension");
    return tangent;
}

namespace detail {

inline std::vector<std::vector<long>> combinations(long n, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> c(k);
    std::iota(c.begin(), c.end(), 1L);
    if (k == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(c);
        long i = k - 1;
        while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (long j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

inline std::string set_label(const std::vector<long>& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

inline long gcd_of_pairings(const EffectiveCone& cone, const IntVec& anticanonical) {
    long g = 0;
    for (const auto& gen : cone.generators) g = std::gcd(g, dot(gen, anticanonical));
    return g;
}

} // namespace detail

/* Product of projective spaces P^{n_1} x ... x P^{n_b}; a single block is
 * P^n and Gr(1, n+1). */
inline BuiltTarget build_product_of_projective(const std::vector<long>& dims) {
    if (dims.empty()) throw InvalidFamilyParams("product of projective: empty dimension list");
    for (long d : dims)
        if (d <= 0) throw InvalidFamilyParams("product of projective: dimensions must be positive");
    BuiltTarget t;
    long b = static_cast<long>(dims.size());
    GitPresentation& p = t.presentation;
    p.rank_t = b;
    long s_total = 0;
    for (long d : dims) s_total += d + 1;
    p.s_rank = s_total;
    p.chern_blocks.assign(b, 1);
    for (long d : dims) p.s_blocks.push_back(d + 1);
    long s_off = 0;
    for (long blk = 0; blk < b; ++blk) {
        long count = dims[blk] + 1;
        for (long a = 0; a < count; ++a) {
            IntVec w(b, 0);
            w[blk] = 1;
            IntVec sw(s_total, 0);
            sw[s_off + a] = 1;
            p.weights_v.push_back(w);
            p.s_weights.push_back(sw);
        }
        s_off += count;
    }
    p.theta.assign(b, 1);
    for (long blk = 0; blk < b; ++blk) {
        IntVec e(b, 0);
        e[blk] = 1;
        p.class_basis.push_back(e);
        t.cone.inequalities.push_back(e);
        t.cone.generators.push_back(e);
    }
    t.cone.provenance = EffectiveCone::Provenance::BuiltInTarget;
    p.finalize();
    t.anticanonical = p.det_rho;
    t.fano_index = detail::gcd_of_pairings(t.cone, t.anticanonical);

    // charts: one homogeneous coordinate per factor
    std::vector<std::vector<long>> choice{{}};
    for (long blk = 0; blk < b; ++blk) {
        std::vector<std::vector<long>> next;
        for (const auto& c : choice)
            for (long a = 1; a <= dims[blk] + 1; ++a) {
                auto cc = c;
                cc.push_back(a);
                next.push_back(cc);
            }
        choice = std::move(next);
    }
    for (const auto& c : choice) {
        FixedPointChart chart;
        chart.label = detail::set_label(c);
        for (long blk = 0; blk < b; ++blk) {
            LinearForm f;
            f.set(p.lambda_symbol(std::accumulate(dims.begin(), dims.begin() + blk, 0L) + blk + c[blk] - 1),
                  Rational(-1));
            chart.root_assignment[p.chern_symbol(blk)] = f;
        }
        chart.tangent_weights = derive_tangent_weights(p, chart.root_assignment);
        t.charts.push_back(std::move(chart));
    }
    if (dims.size() == 1)
        t.name = "p" + std::to_string(dims[0]);
    else {
        t.name = "pp:";
        for (size_t i = 0; i < dims.size(); ++i) t.name += (i ? "," : "") + std::to_string(dims[i]);
    }
    return t;
}

inline BuiltTarget build_projective_space(long n) { return build_product_of_projective({n}); }

inline BuiltTarget build_grassmannian(long k, long n) {
    if (k <= 0 || n <= 0 || k >= n) throw InvalidFamilyParams("Grassmannian requires 0 < k < n");
    BuiltTarget t;
    GitPresentation& p = t.presentation;
    p.rank_t = k;
    p.s_rank = n;
    p.chern_blocks = {k};
    p.s_blocks = {n};
    for (long i = 0; i < k; ++i)
        for (long a = 0; a < n; ++a) {
            IntVec w(k, 0);
            w[i] = 1;
            IntVec sw(n, 0);
            sw[a] = 1;
            p.weights_v.push_back(w);
            p.s_weights.push_back(sw);
        }
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            if (i == j) continue;
            IntVec a(k, 0);
            a[i] = 1;
            a[j] = -1;
            p.roots.push_back(a);
        }
    p.weyl = WeylAction::gl_blocks({k});
    p.theta.assign(k, 1);
    p.class_basis = {IntVec(k, 1)};
    for (long i = 0; i < k; ++i) {
        IntVec e(k, 0);
        e[i] = 1;
        t.cone.inequalities.push_back(e);
        t.cone.generators.push_back(e);
    }
    t.cone.provenance = EffectiveCone::Provenance::BuiltInTarget;
    p.finalize();
    t.anticanonical = p.det_rho; // n * det
    t.fano_index = detail::gcd_of_pairings(t.cone, t.anticanonical);
    for (const auto& I : detail::combinations(n, k)) {
        FixedPointChart chart;
        chart.label = "I=" + detail::set_label(I);
        for (long i = 0; i < k; ++i) {
            LinearForm f;
            f.set(p.lambda_symbol(I[i] - 1), Rational(-1));
            chart.root_assignment[p.chern_symbol(i)] = f;
        }
        chart.tangent_weights = derive_tangent_weights(p, chart.root_assignment);
        t.charts.push_back(std::move(chart));
    }
    t.name = "gr:" + std::to_string(k) + "," + std::to_string(n);
    return t;
}

/* The Grassmann bundle of l-planes in m copies of the tautological bundle
 * on Gr(k,n):  V = M_{k x n} x M_{l x km},  G = GL_k x GL_l, with the
 * column c of the second factor carrying weight y_j - x_{((c-1) mod k)+1}
 * and the lambda of its k-column block. */
inline BuiltTarget build_grassmann_bundle(long k, long n, long l, long m) {
    if (k <= 0 || n <= 0 || l <= 0 || m <= 0) throw InvalidFamilyParams("parameters must be positive");
    if (k >= n) throw InvalidFamilyParams("GrassmannBundle requires k < n");
    if (l >= k * m) throw InvalidFamilyParams("GrassmannBundle requires l < km");
    BuiltTarget t;
    GitPresentation& p = t.presentation;
    long r = k + l;
    p.rank_t = r;
    p.s_rank = n + m;
    p.chern_blocks = {k, l};
    p.s_blocks = {n, m};
    for (long i = 0; i < k; ++i)
        for (long a = 0; a < n; ++a) {
            IntVec w(r, 0);
            w[i] = 1;
            IntVec sw(n + m, 0);
            sw[a] = 1;
            p.weights_v.push_back(w);
            p.s_weights.push_back(sw);
        }
    for (long j = 0; j < l; ++j)
        for (long c = 0; c < k * m; ++c) {
            IntVec w(r, 0);
            w[k + j] = 1;
            w[c % k] = -1;
            IntVec sw(n + m, 0);
            sw[n + c / k] = 1;
            p.weights_v.push_back(w);
            p.s_weights.push_back(sw);
        }
    auto add_block_roots = [&](long off, long size) {
        for (long i = 0; i < size; ++i)
            for (long j = 0; j < size; ++j) {
                if (i == j) continue;
                IntVec a(r, 0);
                a[off + i] = 1;
                a[off + j] = -1;
                p.roots.push_back(a);
            }
    };
    add_block_roots(0, k);
    add_block_roots(k, l);
    p.weyl = WeylAction::gl_blocks({k, l});
    p.theta.assign(r, 1);
    IntVec q1(r, 0), q2(r, 0);
    for (long i = 0; i < k; ++i) q1[i] = 1;
    for (long j = 0; j < l; ++j) q2[k + j] = 1;
    p.class_basis = {q1, q2};
    for (long i = 0; i < r; ++i) {
        IntVec e(r, 0);
        e[i] = 1;
        t.cone.inequalities.push_back(e);
        t.cone.generators.push_back(e);
    }
    t.cone.provenance = EffectiveCone::Provenance::BuiltInTarget;
    p.finalize();
    t.anticanonical.assign(r, 0);
    for (long i = 0; i < k; ++i) t.anticanonical[i] = n - l * m;
    for (long j = 0; j < l; ++j) t.anticanonical[k + j] = k * m;
    t.fano_index = detail::gcd_of_pairings(t.cone, t.anticanonical);

    for (const auto& I : detail::combinations(n, k)) {
        for (const auto& J : detail::combinations(k * m, l)) {
            FixedPointChart chart;
            chart.label = "I=" + detail::set_label(I) + ",J=" + detail::set_label(J);
            for (long i = 0; i < k; ++i) {
                LinearForm f;
                f.set(p.lambda_symbol(I[i] - 1), Rational(-1));
                chart.root_assignment[p.chern_symbol(i)] = f;
            }
            for (long j = 0; j < l; ++j) {
                long c = J[j] - 1;        // 0-based column in M_{l x km}
                long xi = c % k;          // block position -> x index
                long blk = c / k;         // lambda^2 block
                LinearForm f;
                f.set(p.lambda_symbol(I[xi] - 1), Rational(-1));
                f.set(p.lambda_symbol(n + blk), Rational(-1));
                chart.root_assignment[p.chern_symbol(k + j)] = f;
            }
            chart.tangent_weights = derive_tangent_weights(p, chart.root_assignment);
            t.charts.push_back(std::move(chart));
        }
    }
    t.name = "gb:" + std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(l) + "," +
             std::to_string(m);
    return t;
}

/* Attach the anticanonical twist with trivial linearization.  Requires
 * the target to be Fano. */
inline GitPresentation anticanonical_twist(const BuiltTarget& t) {
    for (const auto& gen : t.cone.generators)
        if (dot(gen, t.anticanonical) <= 0)
            throw NotFano("anticanonical_twist: target is not Fano");
    GitPresentation p = t.presentation;
    p.twist_weights = {t.anticanonical};
    p.twist_s_weights = {IntVec(p.s_rank, 0)};
    p.finalize();
    return p;
}

/* Parse a built-in target name: p{n}, pp:n1,n2,..., gr:k,n, gb:k,n,l,m. */
inline BuiltTarget build_target(const std::string& name) {
    auto parse_list = [](const std::string& s) {
        std::vector<long> out;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            try {
                out.push_back(std::stol(s.substr(pos, comma - pos)));
            } catch (...) {
                throw InvalidFamilyParams("bad integer in target name: " + s);
            }
            pos = comma + 1;
        }
        return out;
    };
    if (name.rfind("pp:", 0) == 0) return build_product_of_projective(parse_list(name.substr(3)));
    if (name.rfind("gr:", 0) == 0) {
        auto v = parse_list(name.substr(3));
        if (v.size() != 2) throw InvalidFamilyParams("gr target needs k,n");
        return build_grassmannian(v[0], v[1]);
    }
    if (name.rfind("gb:", 0) == 0) {
        auto v = parse_list(name.substr(3));
        if (v.size() != 4) throw InvalidFamilyParams("gb target needs k,n,l,m");
        return build_grassmann_bundle(v[0], v[1], v[2], v[3]);
    }
    if (!name.empty() && name[0] == 'p') {
        try {
            return build_projective_space(std::stol(name.substr(1)));
        } catch (const InvalidFamilyParams&) {
            throw;
        } catch (...) {
            throw InvalidFamilyParams("unknown target: " + name);
        }
    }
    throw InvalidFamilyParams("unknown target: " + name);
}

/* ---- fixed-locus descriptors ----------------------------------------- */

struct FixedLocusDescriptor {
    DegreeLift lift;           // as supplied
    DegreeLift sorted_lift;    // block-sorted ascending (the chart convention)
    bool permutation_applied = false;
    std::vector<IntVec> parabolic_roots;   // roots alpha with lift(alpha) >= 0
    std::vector<size_t> retained_weights;  // indices j with lift(xi_j) >= 0
    long dim_v_beta = 0;
    long dim_p = 0;
    long dim_f = 0;
    std::vector<std::string> pattern; // star/zero rows, GrassmannBundle only
};

/* Parabolic and V_beta data of a degree lift, plus the star/zero matrix
 * pattern for the Grassmann-bundle family (rows j, columns c; a zero
 * entry where the pairing against the column weight is negative). */
inline FixedLocusDescriptor fixed_locus_descriptor(const BuiltTarget& t, const DegreeLift& lift) {
    const GitPresentation& p = t.presentation;
    if (static_cast<long>(lift.size()) != p.rank_t)
        throw Error("fixed_locus_descriptor: lift dimension mismatch");
    FixedLocusDescriptor d;
    d.lift = lift;
    d.sorted_lift = lift;
    long off = 0;
    for (long b : p.chern_blocks) {
        std::sort(d.sorted_lift.begin() + off, d.sorted_lift.begin() + off + b);
        off += b;
    }
    d.permutation_applied = d.sorted_lift != lift;
    for (const auto& alpha : p.roots)
        if (dot(d.sorted_lift, alpha) >= 0) d.parabolic_roots.push_back(alpha);
    for (size_t j = 0; j < p.weights_v.size(); ++j)
        if (dot(d.sorted_lift, p.weights_v[j]) >= 0) d.retained_weights.push_back(j);
    d.dim_v_beta = static_cast<long>(d.retained_weights.size());
    d.dim_p = p.rank_t + static_cast<long>(d.parabolic_roots.size());
    d.dim_f = d.dim_v_beta - d.dim_p;

    if (t.name.rfind("gb:", 0) == 0 && p.chern_blocks.size() == 2) {
        long k = p.chern_blocks[0], l = p.chern_blocks[1];
        long km = t.anticanonical[k]; // y-coefficient of -K is the column count km
        for (long j = 0; j < l; ++j) {
            std::string row;
            for (long c = 0; c < km; ++c)
                row += (d.sorted_lift[k + j] - d.sorted_lift[c % k] < 0) ? '0' : '*';
            d.pattern.push_back(row);
        }
    }
    return d;
}

} // namespace abnab

#endif
