#ifndef ABNAB_LIFTS_HPP
#define ABNAB_LIFTS_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/presentation.hpp"
#include "abnab/weyl.hpp"

namespace abnab {

/* A degree class: the W-orbit of a representative lift, together with the
 * pairing vector against the chosen basis of W-invariant characters. */
struct DegreeClass {
    DegreeLift representative;
    std::vector<DegreeLift> orbit;
    size_t stabilizer_size = 1;
    IntVec class_values; // pairings against class_basis, when a basis is known
};

// Full W-orbit under the dual action, with stabilizer size.
inline DegreeClass orbit_of(const DegreeLift& lift, const WeylAction& w) {
    DegreeClass cls;
    cls.representative = lift;
    const auto& duals = w.dual_closure(lift.size());
    std::set<DegreeLift> orbit;
    for (const auto& m : duals) orbit.insert(mat_vec(m, lift));
    cls.orbit.assign(orbit.begin(), orbit.end());
    cls.stabilizer_size = duals.size() / cls.orbit.size();
    return cls;
}

namespace detail {

inline long div_floor(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline long div_ceil(long a, long b) { return -div_floor(-a, b); }

struct Interval {
    std::optional<long> lo, hi;
    bool empty() const { return lo && hi && *lo > *hi; }
};

} // namespace detail

/* All integer vectors satisfying the cone inequalities and the linear
 * equalities a . lift = t, in lexicographic order.  Bounds are derived by
 * interval propagation; an unbounded coordinate raises UnboundedFiber. */
inline std::vector<DegreeLift> enumerate_lifts(const EffectiveCone& cone,
                                               const std::vector<std::pair<IntVec, long>>& equalities,
                                               long rank) {
    using detail::Interval;
    // constraints in the form  c . v >= b
    std::vector<std::pair<IntVec, long>> cons;
    for (const auto& c : cone.inequalities) cons.push_back({c, 0});
    for (const auto& [a, t] : equalities) {
        cons.push_back({a, t});
        IntVec na(a.size());
        for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
        cons.push_back({na, -t});
    }
    for (const auto& [c, b] : cons)
        if (static_cast<long>(c.size()) != rank) throw MalformedPresentation("constraint dimension mismatch");

    std::vector<Interval> box(rank);
    bool infeasible = false;
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool changed = false;
        for (const auto& [c, b] : cons) {
            for (long i = 0; i < rank; ++i) {
                if (c[i] == 0) continue;
                // bound on c_i v_i from the maxima of the other terms
                long rest = 0;
                bool known = true;
                for (long j = 0; j < rank && known; ++j) {
                    if (j == i || c[j] == 0) continue;
                    if (c[j] > 0) {
                        if (box[j].hi)
                            rest += c[j] * *box[j].hi;
                        else
                            known = false;
                    } else {
                        if (box[j].lo)
                            rest += c[j] * *box[j].lo;
                        else
                            known = false;
                    }
                }
                if (!known) continue;
                // c_i v_i >= b - rest
                if (c[i] > 0) {
                    long lo = detail::div_ceil(b - rest, c[i]);
                    if (!box[i].lo || lo > *box[i].lo) {
                        box[i].lo = lo;
                        changed = true;
                    }
                } else {
                    long hi = detail::div_floor(b - rest, c[i]);
                    if (!box[i].hi || hi < *box[i].hi) {
                        box[i].hi = hi;
                        changed = true;
                    }
                }
                if (box[i].empty()) infeasible = true;
            }
        }
        if (!changed || infeasible) break;
    }
    if (infeasible) return {};
    unsigned long long volume = 1;
    for (long i = 0; i < rank; ++i) {
        if (!box[i].lo || !box[i].hi)
            throw UnboundedFiber("enumerate_lifts: coordinate " + std::to_string(i) +
                                 " unbounded in the requested fiber");
        volume *= static_cast<unsigned long long>(*box[i].hi - *box[i].lo + 1);
        if (volume > 10000000ULL) throw SizeLimitExceeded("enumerate_lifts: search box too large");
    }

    std::vector<DegreeLift> out;
    DegreeLift v(rank, 0);
    // lexicographic DFS over the box
    auto satisfies = [&](const DegreeLift& x) {
        for (const auto& [c, b] : cons)
            if (dot(c, x) < b) return false;
        return true;
    };
    std::vector<long> idx(rank);
    for (long i = 0; i < rank; ++i) {
        idx[i] = *box[i].lo;
        v[i] = idx[i];
    }
    while (true) {
        if (satisfies(v)) out.push_back(v);
        long i = rank - 1;
        while (i >= 0 && v[i] == *box[i].hi) {
            v[i] = *box[i].lo;
            --i;
        }
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

// Class values of a lift against a basis of W-invariant characters.
inline IntVec class_values(const GitPresentation& p, const DegreeLift& lift) {
    IntVec out;
    for (const auto& b : p.class_basis) out.push_back(dot(lift, b));
    return out;
}

} // namespace abnab

#endif
