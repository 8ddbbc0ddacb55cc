#ifndef ABNAB_IFUNCTION_HPP
#define ABNAB_IFUNCTION_HPP

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/factored_term.hpp"
#include "abnab/lifts.hpp"
#include "abnab/presentation.hpp"

namespace abnab {

/* The telescoped ratio  prod_{k=-inf}^{d}(c+kz) / prod_{k=-inf}^{0}(c+kz):
 * for d >= 0 the finite product prod_{k=1..d}(c+kz), for d < 0 the
 * reciprocal prod_{k=d+1..0}(c+kz)^{-1}, and the unit term at d = 0. */
inline FactoredTerm hypergeometric_factor(const LinearForm& c, long d) {
    FactoredTerm t = FactoredTerm::one();
    if (d >= 0) {
        for (long k = 1; k <= d; ++k) t.multiply_factor(c.plus_kz(k), 1);
    } else {
        for (long k = d + 1; k <= 0; ++k) t.multiply_factor(c.plus_kz(k), -1);
    }
    return t;
}

/* Product over every root alpha (both signs) of the hypergeometric factor
 * in the non-equivariant class of L_alpha at exponent lift(alpha). */
inline FactoredTerm root_factor(const GitPresentation& p, const DegreeLift& lift) {
    FactoredTerm t = FactoredTerm::one();
    for (const auto& alpha : p.roots)
        t *= hypergeometric_factor(p.lift_character(alpha), p.pairing(lift, alpha));
    return t;
}

/* Toric factor: product over the weights of V of the reciprocal
 * hypergeometric factor, with lambda terms included iff equivariant. */
inline FactoredTerm abelian_factor(const GitPresentation& p, const DegreeLift& lift,
                                   bool equivariant) {
    FactoredTerm t = FactoredTerm::one();
    for (size_t j = 0; j < p.weights_v.size(); ++j) {
        LinearForm c = p.lift_weight(j, equivariant);
        t *= hypergeometric_factor(c, p.pairing(lift, p.weights_v[j])).inverted();
    }
    return t;
}

/* Euler-class twist: product over the twist weights, numerators up.
 * Requires convexity on the cone when generators are known. */
inline FactoredTerm twist_factor(const GitPresentation& p, const DegreeLift& lift,
                                 bool equivariant, const EffectiveCone* cone = nullptr) {
    if (cone) {
        for (const auto& gen : cone->generators)
            for (const auto& eps : p.twist_weights)
                if (dot(gen, eps) < 0)
                    throw NonConvexTwist("twist weight pairs negatively with a cone generator");
    }
    FactoredTerm t = FactoredTerm::one();
    for (size_t j = 0; j < p.twist_weights.size(); ++j) {
        LinearForm c = p.lift_twist(j, equivariant);
        t *= hypergeometric_factor(c, p.pairing(lift, p.twist_weights[j]));
    }
    return t;
}

struct CoefficientRequest {
    bool twisted = false;
    bool equivariant = false;
};

// One beta-tilde summand: root factor * abelian factor * optional twist.
inline FactoredTerm summand(const GitPresentation& p, const DegreeLift& lift,
                            const CoefficientRequest& req, const EffectiveCone* cone = nullptr) {
    if (req.twisted && p.twist_weights.empty())
        throw Error("summand: twist requested but no twist weights present");
    if (req.equivariant && !p.equivariant_capable())
        throw Error("summand: equivariant requested but no S-weights present");
    FactoredTerm t = root_factor(p, lift);
    t *= abelian_factor(p, lift, req.equivariant);
    if (req.twisted) t *= twist_factor(p, lift, req.equivariant, cone);
    return t;
}

/* A finite sum of factored summands indexed by the lifts contributing to
 * one degree class. */
struct IFunctionCoefficient {
    IntVec class_values;
    std::map<DegreeLift, FactoredTerm> summands;
    long homogeneity_degree = 0; // -beta(det rho) + beta(det sigma)

    std::vector<FactoredTerm> summand_list() const {
        std::vector<FactoredTerm> out;
        for (const auto& [lift, t] : summands) out.push_back(t);
        return out;
    }
};

/* Assemble the coefficient for one degree class: enumerate every lift in
 * the cone with the requested class values and build its summand.  The
 * W/W_L orbit sum is realized as the sum over all lifts. */
inline IFunctionCoefficient assemble_coefficient(const GitPresentation& p,
                                                 const EffectiveCone& cone,
                                                 const IntVec& class_vals,
                                                 const CoefficientRequest& req) {
    if (p.class_basis.size() != class_vals.size())
        throw Error("assemble_coefficient: class value count does not match class basis");
    std::vector<std::pair<IntVec, long>> eqs;
    for (size_t i = 0; i < p.class_basis.size(); ++i) eqs.emplace_back(p.class_basis[i], class_vals[i]);
    IFunctionCoefficient coeff;
    coeff.class_values = class_vals;
    IntVec diff(p.rank_t);
    for (long i = 0; i < p.rank_t; ++i) diff[i] = p.det_sigma[i] - p.det_rho[i];
    bool first = true;
    for (const auto& lift : enumerate_lifts(cone, eqs, p.rank_t)) {
        FactoredTerm t = summand(p, lift, req, &cone);
        long d = dot(lift, diff);
        if (first) {
            coeff.homogeneity_degree = d;
            first = false;
        } else if (d != coeff.homogeneity_degree) {
            throw Error("assemble_coefficient: homogeneity degree differs across lifts");
        }
        coeff.summands.emplace(lift, std::move(t));
    }
    return coeff;
}

/* Series up to per-class bounds; the degree-0 unit term is implicit and
 * emitted by the I/O layer. */
struct IFunctionSeries {
    std::map<IntVec, IFunctionCoefficient> coefficients;
};

inline IFunctionSeries assemble_series(const GitPresentation& p, const EffectiveCone& cone,
                                       const IntVec& bounds, const CoefficientRequest& req) {
    if (bounds.size() != p.class_basis.size())
        throw Error("assemble_series: bound count does not match class basis");
    IFunctionSeries series;
    IntVec vals(bounds.size(), 0);
    while (true) {
        bool all_zero = std::all_of(vals.begin(), vals.end(), [](long v) { return v == 0; });
        if (!all_zero) series.coefficients.emplace(vals, assemble_coefficient(p, cone, vals, req));
        long i = static_cast<long>(vals.size()) - 1;
        while (i >= 0 && vals[i] == bounds[i]) vals[i--] = 0;
        if (i < 0) break;
        ++vals[i];
    }
    return series;
}

/* Advisory report on the mirror-theorem hypotheses; the engine computes I
 * regardless of the outcome. */
struct MirrorReport {
    enum class Status { Satisfied, NotSatisfied, Unknown };
    Status status = Status::Unknown;
    bool fano = false;
    long fano_index = 0;
    bool index_at_least_two = false;
    bool convex = true;
    bool det_inequality = false;
    bool isolated_fixed_points = false;
    std::string detail;
};

inline MirrorReport mirror_hypothesis_report(const GitPresentation& p, const EffectiveCone* cone,
                                             const IntVec* anticanonical, bool has_charts) {
    MirrorReport rep;
    if (!cone || cone->generators.empty() || !anticanonical) {
        rep.status = MirrorReport::Status::Unknown;
        rep.detail = "anticanonical character or cone generators not supplied";
        return rep;
    }
    rep.fano = true;
    long g = 0;
    for (const auto& gen : cone->generators) {
        long v = dot(gen, *anticanonical);
        if (v <= 0) rep.fano = false;
        g = std::gcd(g, v);
    }
    rep.fano_index = g;
    rep.index_at_least_two = rep.fano && g >= 2;
    for (const auto& gen : cone->generators)
        for (const auto& eps : p.twist_weights)
            if (dot(gen, eps) < 0) rep.convex = false;
    rep.det_inequality = true;
    for (const auto& gen : cone->generators) {
        IntVec diff(p.rank_t);
        for (long i = 0; i < p.rank_t; ++i) diff[i] = p.det_rho[i] - p.det_sigma[i];
        if (dot(gen, diff) < 0) rep.det_inequality = false;
    }
    rep.isolated_fixed_points = has_charts;
    bool ok = rep.fano && rep.index_at_least_two && rep.convex && rep.det_inequality &&
              rep.isolated_fixed_points;
    rep.status = ok ? MirrorReport::Status::Satisfied : MirrorReport::Status::NotSatisfied;
    if (!ok) {
        if (!rep.fano) rep.detail = "target is not Fano";
        else if (!rep.index_at_least_two)
            rep.detail = "index condition fails: Fano index " + std::to_string(g) + " < 2";
        else if (!rep.convex) rep.detail = "twist representation is not convex";
        else if (!rep.det_inequality) rep.detail = "det rho / det sigma inequality fails";
        else rep.detail = "no isolated-fixed-point torus action supplied";
    } else {
        rep.detail = "Fano index " + std::to_string(g) + ", convex twist, isolated fixed points";
    }
    return rep;
}

} // namespace abnab

#endif
