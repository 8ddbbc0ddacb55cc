#ifndef ABNAB_WEYL_HPP
#define ABNAB_WEYL_HPP

#include <cstddef>
#include <set>
#include <vector>

#include "abnab/errors.hpp"
#include "abnab/rational.hpp"

namespace abnab {

using IntVec = std::vector<long>;
using IntMat = std::vector<IntVec>;

inline long dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("dot: size mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IntMat identity_mat(size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntVec mat_vec(const IntMat& m, const IntVec& v) {
    IntVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    size_t n = a.size();
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

/* Inverse of a matrix invertible over Z, by exact Gaussian elimination.
 * Throws if singular or if the inverse is not integral. */
inline IntMat mat_inverse(const IntMat& m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
        a[i][n + i] = Rational(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw Error("mat_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        Rational inv = a[col][col].inverse();
        for (size_t j = 0; j < 2 * n; ++j) a[col][j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!a[i][n + j].is_integer())
                throw Error("mat_inverse: inverse not integral");
            r[i][j] = a[i][n + j].to_long();
        }
    return r;
}

inline IntMat mat_transpose(const IntMat& m) {
    size_t n = m.size();
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[j][i] = m[i][j];
    return r;
}

/* Weyl action on the character lattice Z^r by generator matrices
 * (xi -> M xi).  The closure is generated lazily with a size cap.  The
 * dual action on degree lifts is by inverse transposes. */
class WeylAction {
  public:
    WeylAction() = default;
    explicit WeylAction(std::vector<IntMat> generators, size_t cap = 20000)
        : generators_(std::move(generators)), cap_(cap) {
        for (const auto& g : generators_) (void)mat_inverse(g); // must be invertible over Z
    }

    /* Block-wise symmetric-group action for G a product of general linear
     * blocks: adjacent transpositions within each block. */
    static WeylAction gl_blocks(const std::vector<long>& blocks, size_t cap = 20000) {
        size_t r = 0;
        for (long b : blocks) r += static_cast<size_t>(b);
        std::vector<IntMat> gens;
        size_t off = 0;
        for (long b : blocks) {
            for (long i = 0; i + 1 < b; ++i) {
                IntMat m = identity_mat(r);
                size_t a = off + static_cast<size_t>(i);
                m[a][a] = 0;
                m[a + 1][a + 1] = 0;
                m[a][a + 1] = 1;
                m[a + 1][a] = 1;
                gens.push_back(m);
            }
            off += static_cast<size_t>(b);
        }
        return WeylAction(std::move(gens), cap);
    }

    const std::vector<IntMat>& generators() const { return generators_; }
    size_t rank() const { return generators_.empty() ? 0 : generators_[0].size(); }
    size_t cap() const { return cap_; }

    // Full closure, sorted; identity always present.
    const std::vector<IntMat>& closure(size_t rank_hint) const {
        if (!closure_.empty()) return closure_;
        size_t n = generators_.empty() ? rank_hint : generators_[0].size();
        std::set<IntMat> seen;
        seen.insert(identity_mat(n));
        std::vector<IntMat> frontier(seen.begin(), seen.end());
        while (!frontier.empty()) {
            std::vector<IntMat> next;
            for (const auto& m : frontier) {
                for (const auto& g : generators_) {
                    IntMat p = mat_mul(g, m);
                    if (seen.insert(p).second) {
                        next.push_back(p);
                        if (seen.size() > cap_)
                            throw OrbitCapExceeded("WeylAction: closure cap exceeded");
                    }
                }
            }
            frontier = std::move(next);
        }
        closure_.assign(seen.begin(), seen.end());
        return closure_;
    }

    // Dual matrices (M^{-1})^T in the same order as closure().
    const std::vector<IntMat>& dual_closure(size_t rank_hint) const {
        if (dual_closure_.empty()) {
            for (const auto& m : closure(rank_hint))
                dual_closure_.push_back(mat_transpose(mat_inverse(m)));
        }
        return dual_closure_;
    }

  private:
    std::vector<IntMat> generators_;
    size_t cap_ = 20000;
    mutable std::vector<IntMat> closure_;
    mutable std::vector<IntMat> dual_closure_;
};

} // namespace abnab

#endif
