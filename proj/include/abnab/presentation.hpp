#ifndef ABNAB_PRESENTATION_HPP
#define ABNAB_PRESENTATION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/linear_form.hpp"
#include "abnab/symbol.hpp"
#include "abnab/weyl.hpp"

namespace abnab {

using DegreeLift = IntVec; // an element of Hom(chi(T), Z) as an integer vector

/* Semigroup of theta-effective degree lifts, cut out by linear
 * inequalities c . lift >= 0.  Generators (extreme rays) are optional and
 * only used for convexity / Fano reporting. */
struct EffectiveCone {
    enum class Provenance { UserSupplied, BuiltInTarget };
    std::vector<IntVec> inequalities;
    std::vector<IntVec> generators;
    Provenance provenance = Provenance::UserSupplied;

    bool contains(const DegreeLift& lift) const {
        for (const auto& c : inequalities)
            if (dot(c, lift) < 0) return false;
        return true;
    }
};

/* The combinatorial GIT input datum: T-weights of V, roots of G, Weyl
 * action, theta, the auxiliary-torus weights, and twist weights.  The
 * group G itself is never represented; every formula in scope consumes
 * only this shadow. */
struct GitPresentation {
    long rank_t = 0;                    // r
    std::vector<IntVec> weights_v;      // n vectors in Z^r
    std::vector<IntVec> roots;          // all roots, both signs
    WeylAction weyl;
    IntVec theta;                       // restriction of theta to T
    long s_rank = 0;                    // rank of S (0 = non-equivariant)
    std::vector<IntVec> s_weights;      // parallel to weights_v, in Z^s
    std::vector<IntVec> twist_weights;  // weights of E in Z^r
    std::vector<IntVec> twist_s_weights;
    std::vector<long> chern_blocks;     // block sizes summing to r (naming)
    std::vector<long> s_blocks;         // block sizes summing to s_rank
    std::vector<IntVec> class_basis;    // W-invariant characters keying q-variables
    IntVec det_rho;                     // recomputed: sum of weights_v
    IntVec det_sigma;                   // recomputed: sum of twist_weights
    bool flip_equivariant_sign = false; // global lift sign convention flag

    void finalize() {
        if (rank_t <= 0) throw MalformedPresentation("rank_t must be positive");
        auto check_dim = [&](const IntVec& v, const char* what) {
            if (static_cast<long>(v.size()) != rank_t)
                throw MalformedPresentation(std::string(what) + ": wrong dimension");
        };
        for (const auto& w : weights_v) check_dim(w, "weight");
        for (const auto& a : roots) check_dim(a, "root");
        if (!theta.empty()) check_dim(theta, "theta");
        for (const auto& e : twist_weights) check_dim(e, "twist weight");
        if (!s_weights.empty() && s_weights.size() != weights_v.size())
            throw MalformedPresentation("s_weights must parallel weights_v");
        for (const auto& sw : s_weights)
            if (static_cast<long>(sw.size()) != s_rank)
                throw MalformedPresentation("s_weight: wrong dimension");
        if (!twist_s_weights.empty() && twist_s_weights.size() != twist_weights.size())
            throw MalformedPresentation("twist_s_weights must parallel twist_weights");
        for (const auto& sw : twist_s_weights)
            if (static_cast<long>(sw.size()) != s_rank)
                throw MalformedPresentation("twist s_weight: wrong dimension");
        for (const auto& b : class_basis) check_dim(b, "class basis vector");
        if (chern_blocks.empty()) chern_blocks = {rank_t};
        if (std::accumulate(chern_blocks.begin(), chern_blocks.end(), 0L) != rank_t)
            throw MalformedPresentation("chern_blocks must sum to rank_t");
        if (s_blocks.empty() && s_rank > 0) s_blocks = {s_rank};
        if (s_rank > 0 && std::accumulate(s_blocks.begin(), s_blocks.end(), 0L) != s_rank)
            throw MalformedPresentation("s_blocks must sum to s_rank");
        det_rho.assign(rank_t, 0);
        for (const auto& w : weights_v)
            for (long i = 0; i < rank_t; ++i) det_rho[i] += w[i];
        det_sigma.assign(rank_t, 0);
        for (const auto& e : twist_weights)
            for (long i = 0; i < rank_t; ++i) det_sigma[i] += e[i];
    }

    size_t n_weights() const { return weights_v.size(); }
    bool equivariant_capable() const { return s_rank > 0 && !s_weights.empty(); }

    // Symbol of lattice coordinate i, split along chern_blocks.
    Symbol chern_symbol(long i) const {
        long off = 0;
        for (size_t b = 0; b < chern_blocks.size(); ++b) {
            if (i < off + chern_blocks[b]) return Symbol::chern(static_cast<int>(b), static_cast<int>(i - off));
            off += chern_blocks[b];
        }
        throw Error("chern_symbol: index out of range");
    }
    Symbol lambda_symbol(long i) const {
        long off = 0;
        for (size_t b = 0; b < s_blocks.size(); ++b) {
            if (i < off + s_blocks[b]) return Symbol::lambda(static_cast<int>(b), static_cast<int>(i - off));
            off += s_blocks[b];
        }
        throw Error("lambda_symbol: index out of range");
    }
    std::vector<Symbol> coordinate_symbols() const {
        std::vector<Symbol> out;
        for (long i = 0; i < rank_t; ++i) out.push_back(chern_symbol(i));
        return out;
    }
    std::vector<Symbol> lambda_symbols() const {
        std::vector<Symbol> out;
        for (long i = 0; i < s_rank; ++i) out.push_back(lambda_symbol(i));
        return out;
    }

    // The lift of a character xi: sum_i xi_i * (Chern root i).
    LinearForm lift_character(const IntVec& xi) const {
        if (static_cast<long>(xi.size()) != rank_t)
            throw MalformedPresentation("lift_character: wrong dimension");
        LinearForm f;
        for (long i = 0; i < rank_t; ++i)
            if (xi[i] != 0) f.set(chern_symbol(i), Rational(xi[i]));
        return f;
    }

    /* Equivariant lift: the character lift plus the S-weight in lambda
     * symbols, with the +lambda orientation unless the global flip is
     * set. */
    LinearForm lift_with_s(const IntVec& xi, const IntVec& s_weight, bool equivariant) const {
        LinearForm f = lift_character(xi);
        if (equivariant) {
            long sign = flip_equivariant_sign ? -1 : 1;
            for (long i = 0; i < static_cast<long>(s_weight.size()); ++i)
                if (s_weight[i] != 0) f.set(lambda_symbol(i), Rational(sign * s_weight[i]));
        }
        return f;
    }

    LinearForm lift_weight(size_t j, bool equivariant) const {
        static const IntVec kEmpty;
        const IntVec& sw = (equivariant && j < s_weights.size()) ? s_weights[j] : kEmpty;
        return lift_with_s(weights_v[j], sw, equivariant && !sw.empty());
    }
    LinearForm lift_twist(size_t j, bool equivariant) const {
        static const IntVec kEmpty;
        const IntVec& sw = (equivariant && j < twist_s_weights.size()) ? twist_s_weights[j] : kEmpty;
        return lift_with_s(twist_weights[j], sw, equivariant && !sw.empty());
    }

    long pairing(const DegreeLift& lift, const IntVec& xi) const { return dot(lift, xi); }
};

struct ValidationCheck {
    enum class Status { Pass, Fail, Skipped };
    std::string name;
    Status status = Status::Skipped;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    void add(std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name),
                          ok ? ValidationCheck::Status::Pass : ValidationCheck::Status::Fail,
                          std::move(detail)});
    }
    void skip(std::string name, std::string detail = "") {
        checks.push_back({std::move(name), ValidationCheck::Status::Skipped, std::move(detail)});
    }
    bool all_passed() const {
        for (const auto& c : checks)
            if (c.status == ValidationCheck::Status::Fail) return false;
        return true;
    }
};

namespace detail {
// multiset comparison of (weight, s_weight) pairs
inline bool same_weight_multiset(std::vector<std::pair<IntVec, IntVec>> a,
                                 std::vector<std::pair<IntVec, IntVec>> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}
} // namespace detail

/* Structural validation of the standing assumptions, where checkable from
 * the combinatorial datum alone. */
inline ValidationReport validate(const GitPresentation& p, const EffectiveCone* cone = nullptr,
                                 const IntVec* anticanonical = nullptr) {
    ValidationReport rep;

    // roots closed under negation and summing to zero
    {
        std::vector<IntVec> sorted = p.roots;
        std::sort(sorted.begin(), sorted.end());
        bool neg_ok = true;
        for (const auto& a : p.roots) {
            IntVec na(a.size());
            for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
            if (!std::binary_search(sorted.begin(), sorted.end(), na)) {
                neg_ok = false;
                break;
            }
        }
        if (!neg_ok) throw MalformedPresentation("roots not closed under negation");
        rep.add("roots_negation_closed", true);
        IntVec sum(p.rank_t, 0);
        for (const auto& a : p.roots)
            for (long i = 0; i < p.rank_t; ++i) sum[i] += a[i];
        rep.add("roots_sum_zero", std::all_of(sum.begin(), sum.end(), [](long x) { return x == 0; }));
    }

    // Weyl generators permute the weight multiset (with S-weights) and roots
    {
        bool ok = true;
        std::vector<std::pair<IntVec, IntVec>> weight_pairs;
        for (size_t j = 0; j < p.weights_v.size(); ++j)
            weight_pairs.emplace_back(p.weights_v[j],
                                      j < p.s_weights.size() ? p.s_weights[j] : IntVec{});
        for (const auto& g : p.weyl.generators()) {
            std::vector<std::pair<IntVec, IntVec>> mapped;
            for (const auto& [w, sw] : weight_pairs) mapped.emplace_back(mat_vec(g, w), sw);
            if (!detail::same_weight_multiset(weight_pairs, mapped)) ok = false;
            std::vector<IntVec> roots_mapped, roots_orig = p.roots;
            for (const auto& a : p.roots) roots_mapped.push_back(mat_vec(g, a));
            std::sort(roots_mapped.begin(), roots_mapped.end());
            std::sort(roots_orig.begin(), roots_orig.end());
            if (roots_mapped != roots_orig) ok = false;
        }
        rep.add("weyl_compatible", ok);
    }

    // convexity of the twist against cone generators
    if (!p.twist_weights.empty() && cone && !cone->generators.empty()) {
        bool ok = true;
        std::string bad;
        for (const auto& gen : cone->generators)
            for (const auto& eps : p.twist_weights)
                if (dot(gen, eps) < 0) {
                    ok = false;
                    bad = "generator pairs negatively with a twist weight";
                }
        rep.add("twist_convex", ok, bad);
    } else if (!p.twist_weights.empty()) {
        rep.skip("twist_convex", "no cone generators supplied");
    }

    // Fano: anticanonical pairs positively with every cone generator
    if (anticanonical && cone && !cone->generators.empty()) {
        bool fano = true;
        long index_gcd = 0;
        for (const auto& gen : cone->generators) {
            long v = dot(gen, *anticanonical);
            if (v <= 0) fano = false;
            index_gcd = std::gcd(index_gcd, v);
        }
        rep.add("fano", fano, fano ? "index " + std::to_string(index_gcd) : "");
    } else {
        rep.skip("fano", "no anticanonical character supplied");
    }

    // mirror-theorem inequality beta(det rho) - beta(det sigma) >= 0
    if (cone && !cone->generators.empty()) {
        bool ok = true;
        for (const auto& gen : cone->generators) {
            IntVec diff(p.rank_t);
            for (long i = 0; i < p.rank_t; ++i) diff[i] = p.det_rho[i] - p.det_sigma[i];
            if (dot(gen, diff) < 0) ok = false;
        }
        rep.add("det_rho_minus_det_sigma_nonneg", ok);
    } else {
        rep.skip("det_rho_minus_det_sigma_nonneg", "no cone generators supplied");
    }

    return rep;
}

} // namespace abnab

#endif
