// Acceptance gate: one pass/fail line per criterion.  argv[1] is the
// source directory (for the golden descriptor table), argv[2] the CLI
// binary path.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abnab/closed_forms.hpp"
#include "abnab/io.hpp"

using namespace abnab;

namespace {

int g_failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << num << " (" << name << "): " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LinearForm sym(const Symbol& s) { return LinearForm::symbol(s); }

/* 1. Abelian reduction: P^{n-1} coefficients equal the closed form
 *    1 / prod_a prod_k (H + lambda_a + kz), checked chart by chart. */
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (long n = 2; n <= 5 && ok; ++n) {
        BuiltTarget t = build_projective_space(n - 1);
        for (long d = 1; d <= 4 && ok; ++d) {
            CoefficientRequest req{false, true};
            IFunctionCoefficient c = assemble_coefficient(t.presentation, t.cone, {d}, req);
            LocalizedClass pipeline = localize(c, t.charts);
            LocalizedClass oracle;
            for (long i = 1; i <= n; ++i) {
                // frozen closed form, written out by hand
                FactoredTerm term = FactoredTerm::one();
                for (long a = 1; a <= n; ++a) {
                    LinearForm f = sym(Symbol::lambda(0, static_cast<int>(a - 1))) -
                                   sym(Symbol::lambda(0, static_cast<int>(i - 1)));
                    for (long k = 1; k <= d; ++k) term.multiply_factor(f.plus_kz(k), -1);
                }
                oracle.restrictions[t.charts[i - 1].label] = {term};
            }
            for (unsigned long seed : {101UL, 202UL, 303UL}) {
                std::mt19937_64 rng(seed);
                if (!classes_equal(pipeline, oracle, rng)) ok = false;
            }
        }
    }
    double dt = seconds_since(t0);
    report(1, "abelian reduction on projective spaces", ok && dt < 5.0,
           "elapsed " + std::to_string(dt) + "s");
}

/* Hand-coded numeric evaluator of the Grassmann-bundle closed formula at
 * a chart: everything is computed as explicit products of linear
 * polynomials in z, with no shared code with the assembly pipeline. */
/* Unreduced fraction of univariate polynomials; equality is decided by
 * cross multiplication, skipping gcd reduction entirely. */
struct Frac {
    ZPoly num{Rational(0)};
    ZPoly den{Rational(1)};
    void add(const ZPoly& n, const ZPoly& d) {
        num = num * d + n * den;
        den = den * d;
    }
    bool same_value(const Frac& o) const { return num * o.den == o.num * den; }
};

// factored term at a lambda specialization, as an unreduced fraction
Frac frac_of_terms(const std::vector<FactoredTerm>& terms, const Specialization& s) {
    Frac acc;
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        ZPoly num(t.scalar()), den(Rational(1));
        for (const auto& [f, e] : t.factors()) {
            Rational a(0);
            for (const auto& [symb, c] : f.coeffs()) a += c * s.assignments.at(symb);
            ZPoly lin(std::vector<Rational>{a, Rational(f.z_mult())});
            if (lin.is_zero()) throw PoleAtSpecialization("degenerate draw");
            for (long i = 0; i < (e > 0 ? e : -e); ++i) (e > 0 ? num : den) *= lin;
        }
        acc.add(num, den);
    }
    return acc;
}

Frac gb_formula_value(long k, long n, long l, long m, const std::vector<long>& I,
                      const std::vector<long>& J, long d, long e,
                      const std::vector<Rational>& l1, const std::vector<Rational>& l2) {
    std::vector<Rational> x(k), y(l);
    for (long i = 0; i < k; ++i) x[i] = -l1[I[i] - 1];
    for (long j = 0; j < l; ++j) {
        long c = J[j] - 1;
        y[j] = -l1[I[c % k] - 1] - l2[c / k];
    }
    ZPoly num(Rational(1)), den(Rational(1));
    auto push = [&](const Rational& a, long h, bool into_num) {
        ZPoly lin(std::vector<Rational>{a, Rational(h)});
        if (lin.is_zero()) {
            if (!into_num) throw PoleAtSpecialization("degenerate draw");
            num = ZPoly();
        } else {
            (into_num ? num : den) *= lin;
        }
    };
    auto ratio_up = [&](const Rational& a, long dd) {
        // prod_{h=-inf}^{dd} (a+hz) / prod_{h=-inf}^{0} (a+hz)
        if (dd >= 0)
            for (long h = 1; h <= dd; ++h) push(a, h, true);
        else
            for (long h = dd + 1; h <= 0; ++h) push(a, h, false);
    };
    auto ratio_down = [&](const Rational& a, long dd) {
        if (dd >= 0)
            for (long h = 1; h <= dd; ++h) push(a, h, false);
        else
            for (long h = dd + 1; h <= 0; ++h) push(a, h, true);
    };
    Frac total;
    std::vector<long> ds(k, 0);
    // iterate over all splittings d_1+...+d_k = d, e_1+...+e_l = e
    auto split = [](long total_deg, long parts) {
        std::vector<std::vector<long>> out;
        std::vector<long> cur(parts, 0);
        auto rec = [&](auto&& self, long pos, long left) -> void {
            if (pos == parts - 1) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (long v = 0; v <= left; ++v) {
                cur[pos] = v;
                self(self, pos + 1, left - v);
            }
        };
        if (parts > 0) rec(rec, 0, total_deg);
        return out;
    };
    for (const auto& dv : split(d, k)) {
        for (const auto& ev : split(e, l)) {
            num = ZPoly(Rational(1));
            den = ZPoly(Rational(1));
            for (long i = 0; i < k; ++i)
                for (long j = 0; j < k; ++j)
                    if (i != j) ratio_up(x[i] - x[j], dv[i] - dv[j]);
            for (long i = 0; i < l; ++i)
                for (long j = 0; j < l; ++j)
                    if (i != j) ratio_up(y[i] - y[j], ev[i] - ev[j]);
            for (long i = 0; i < k; ++i)
                for (long a = 0; a < n; ++a) ratio_down(x[i] + l1[a], dv[i]);
            for (long i = 0; i < k; ++i)
                for (long j = 0; j < l; ++j)
                    for (long b = 0; b < m; ++b) ratio_down(y[j] - x[i] + l2[b], ev[j] - dv[i]);
            Rational tw(0);
            for (long i = 0; i < k; ++i) tw += Rational(n - l * m) * x[i];
            for (long j = 0; j < l; ++j) tw += Rational(k * m) * y[j];
            ratio_up(tw, (n - l * m) * d + k * m * e);
            if (!num.is_zero()) total.add(num, den);
        }
    }
    return total;
}

void run_gb_oracle(long k, long n, long l, long m, long max_total, bool& ok, std::string& detail) {
    BuiltTarget t = build_grassmann_bundle(k, n, l, m);
    GitPresentation p = anticanonical_twist(t);
    CoefficientRequest req{true, true};
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> dist(-100000, 100000);
    for (long d = 0; d <= max_total && ok; ++d) {
        for (long e = 0; d + e <= max_total && ok; ++e) {
            if (d == 0 && e == 0) continue;
            IFunctionCoefficient c = assemble_coefficient(p, t.cone, {d, e}, req);
            for (const auto& chart : t.charts) {
                auto terms = restrict_coefficient(c, chart);
                // recover (I, J) from the chart label
                std::vector<long> I, J;
                {
                    auto parse_braced = [&](size_t from, std::vector<long>& dst) {
                        size_t open = chart.label.find('{', from);
                        size_t close = chart.label.find('}', open);
                        std::stringstream inner(chart.label.substr(open + 1, close - open - 1));
                        std::string piece;
                        while (std::getline(inner, piece, ',')) dst.push_back(std::stol(piece));
                        return close;
                    };
                    size_t after_i = parse_braced(0, I);
                    parse_braced(after_i, J);
                }
                for (int draw = 0; draw < 5; ++draw) {
                    std::vector<Rational> l1(n), l2(m);
                    Specialization s;
                    Frac pipeline, formula;
                    bool degenerate = true;
                    for (int attempt = 0; attempt < 32 && degenerate; ++attempt) {
                        for (long a = 0; a < n; ++a) l1[a] = Rational(dist(rng));
                        for (long b = 0; b < m; ++b) l2[b] = Rational(dist(rng));
                        s.assignments.clear();
                        for (long a = 0; a < n; ++a)
                            s.assignments[Symbol::lambda(0, static_cast<int>(a))] = l1[a];
                        for (long b = 0; b < m; ++b)
                            s.assignments[Symbol::lambda(1, static_cast<int>(b))] = l2[b];
                        try {
                            pipeline = frac_of_terms(terms, s);
                            formula = gb_formula_value(k, n, l, m, I, J, d, e, l1, l2);
                            degenerate = false;
                        } catch (const PoleAtSpecialization&) {
                            degenerate = true; // lambda collision, redraw
                        }
                    }
                    if (degenerate) {
                        ok = false;
                        detail = "no generic draw at " + chart.label;
                        break;
                    }
                    if (!pipeline.same_value(formula)) {
                        ok = false;
                        detail = "mismatch at chart " + chart.label + ", (d,e)=(" +
                                 std::to_string(d) + "," + std::to_string(e) + ")";
                        break;
                    }
                }
                if (!ok) break;
            }
        }
    }
}

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    run_gb_oracle(1, 4, 1, 2, 3, ok, detail);
    if (ok) run_gb_oracle(2, 7, 1, 3, 2, ok, detail);
    double dt = seconds_since(t0);
    if (detail.empty()) detail = "elapsed " + std::to_string(dt) + "s";
    report(2, "Grassmann-bundle closed-formula oracle", ok && dt < 60.0, detail);
}

/* 3. Pole cancellation across the lift sum, with a lone-summand
 *    negative control. */
void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    bool negative_control = false;
    BuiltTarget t = build_grassmannian(2, 4);
    CoefficientRequest req{false, true};
    std::mt19937_64 rng(777);
    for (long d = 1; d <= 3 && ok; ++d) {
        IFunctionCoefficient c = assemble_coefficient(t.presentation, t.cone, {d}, req);
        for (const auto& chart : t.charts) {
            auto terms = restrict_coefficient(c, chart);
            if (!restriction_pole_free(terms, rng)) ok = false;
            for (const auto& term : terms)
                for (const auto& f : lambda_pole_candidates({term}))
                    if (!probe_pole({term}, f, rng).pole_free) negative_control = true;
        }
    }
    double dt = seconds_since(t0);
    report(3, "pole cancellation across the lift sum", ok && negative_control && dt < 20.0,
           "elapsed " + std::to_string(dt) + "s");
}

/* 4. Homogeneity under scaling every symbol and z by t = 2. */
void criterion_4() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<long> dist(-10000, 10000);
    struct Case {
        const char* name;
        bool twist;
        IntVec bounds;
    } cases[] = {{"p1", false, {2}},      {"p2", true, {2}},          {"p3", false, {2}},
                 {"pp:1,1", false, {1, 1}}, {"gr:2,4", false, {2}},
                 {"gb:1,4,1,2", false, {1, 1}}, {"gb:1,4,1,2", true, {1, 1}}};
    for (const auto& cse : cases) {
        BuiltTarget t = build_target(cse.name);
        GitPresentation p = cse.twist ? anticanonical_twist(t) : t.presentation;
        CoefficientRequest req{cse.twist, true};
        IFunctionSeries series = assemble_series(p, t.cone, cse.bounds, req);
        IntVec diff(p.rank_t);
        for (long i = 0; i < p.rank_t; ++i) diff[i] = p.det_sigma[i] - p.det_rho[i];
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& [lift, term] : coeff.summands) {
                long D = dot(lift, diff);
                if (D != coeff.homogeneity_degree || term.net_degree() != D) {
                    ok = false;
                    detail = std::string(cse.name) + ": degree bookkeeping";
                }
                if (term.is_zero()) continue;
                for (int attempt = 0;; ++attempt) {
                    std::map<Symbol, Rational> a, a2;
                    for (const Symbol& s : collect_symbols(term)) {
                        a[s] = Rational(dist(rng));
                        a2[s] = a[s] * Rational(2);
                    }
                    Rational z(dist(rng));
                    try {
                        Rational v1 = term.evaluate<Rational>(a, z);
                        Rational v2 = term.evaluate<Rational>(a2, z * Rational(2));
                        if (v2 != Rational::pow(Rational(2), D) * v1) {
                            ok = false;
                            detail = std::string(cse.name) + ": scaling mismatch";
                        }
                        break;
                    } catch (const PoleAtSpecialization&) {
                        if (attempt > 32) throw;
                    }
                }
            }
        }
    }
    report(4, "homogeneity of every summand", ok, detail);
}

/* 5. Structural Weyl equivariance of summands. */
void criterion_5() {
    bool ok = true;
    struct Case {
        const char* name;
        IntVec bounds;
    } cases[] = {{"gr:2,4", {3}}, {"gb:1,4,1,2", {3, 3}}};
    for (const auto& cse : cases) {
        BuiltTarget t = build_target(cse.name);
        const GitPresentation& p = t.presentation;
        CoefficientRequest req{false, true};
        IFunctionSeries series = assemble_series(p, t.cone, cse.bounds, req);
        auto coords = p.coordinate_symbols();
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& [lift, term] : coeff.summands) {
                for (const auto& g : p.weyl.generators()) {
                    IntVec wl = mat_vec(mat_transpose(mat_inverse(g)), lift);
                    if (summand(p, wl, req, &t.cone) != term.transformed_chern(g, coords)) ok = false;
                }
            }
        }
    }
    report(5, "Weyl equivariance of summands", ok);
}

/* 6. Atiyah-Bott sanity: integrate(1) = 0, integrate(e(T)) = chi. */
void criterion_6() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(161803);
    struct Case {
        const char* name;
        long chi;
    } cases[] = {{"p1", 2}, {"p2", 3}, {"gr:2,4", 6}, {"gb:1,4,1,2", 8}};
    for (const auto& cse : cases) {
        BuiltTarget t = build_target(cse.name);
        ZRationalFunction zero = integrate(localized_unit(t.charts), t.charts, rng);
        ZRationalFunction chi = integrate(localized_tangent_euler(t.charts), t.charts, rng);
        if (!zero.is_zero() || chi != ZRationalFunction(Rational(cse.chi))) {
            ok = false;
            detail = cse.name;
        }
    }
    report(6, "localization sanity integrals", ok, detail);
}

/* 7. GL2 divided-difference table via Brion symmetrization. */
void criterion_7() {
    std::vector<Symbol> coords{Symbol::chern(0, 0), Symbol::chern(0, 1)};
    std::vector<LinearForm> pos{sym(coords[0]) - sym(coords[1])};
    WeylAction w = WeylAction::gl_blocks({2});
    MultiPolynomial x1 = MultiPolynomial::from_linear(sym(coords[0]));
    MultiPolynomial x2 = MultiPolynomial::from_linear(sym(coords[1]));
    std::vector<std::pair<long, MultiPolynomial>> table{
        {0, MultiPolynomial()},
        {1, MultiPolynomial(Rational(1))},
        {2, x1 + x2},
        {3, x1.pow(2) + x1 * x2 + x2.pow(2)}};
    bool ok = true;
    for (const auto& [power, expected] : table) {
        FactoredTerm f = FactoredTerm::one();
        if (power > 0) f.multiply_factor(sym(coords[0]), power);
        ExpandedRational r = expand_sum(brion_pushforward(f, pos, w.closure(2), coords));
        if (!r.is_polynomial() || r.num != expected) ok = false;
    }
    report(7, "GL2 divided differences", ok);
}

/* 8. Fixed-locus descriptors against the golden table and the direct
 *    parabolic-root rule. */
void criterion_8(const std::string& source_dir) {
    bool ok = true;
    std::string detail;
    std::ifstream f(source_dir + "/tests/data/gb_descriptors.json");
    if (!f) {
        report(8, "fixed-locus descriptor table", false, "golden file missing");
        return;
    }
    json golden = json::parse(f);
    BuiltTarget t = build_target(golden.at("target").get<std::string>());
    const GitPresentation& p = t.presentation;
    long k = p.chern_blocks[0];
    long km = t.anticanonical[k];
    size_t n_checked = 0;
    for (const auto& entry : golden.at("lifts")) {
        DegreeLift lift = entry.at("lift").get<DegreeLift>();
        FixedLocusDescriptor d = fixed_locus_descriptor(t, lift);
        if (json(d.sorted_lift) != entry.at("sorted_lift")) ok = false;
        if (json(d.pattern) != entry.at("pattern")) ok = false;
        if (static_cast<long>(d.parabolic_roots.size()) != entry.at("n_parabolic").get<long>())
            ok = false;
        // star/zero rule recomputed from the sorted lift, column by column
        for (long j = 0; j < static_cast<long>(d.pattern.size()); ++j)
            for (long c = 0; c < km; ++c) {
                bool zero = d.sorted_lift[k + j] - d.sorted_lift[c % k] < 0;
                if ((d.pattern[j][c] == '0') != zero) ok = false;
            }
        // parabolic set recomputed directly
        std::vector<IntVec> parabolic;
        for (const auto& alpha : p.roots)
            if (dot(d.sorted_lift, alpha) >= 0) parabolic.push_back(alpha);
        if (parabolic != d.parabolic_roots) ok = false;
        ++n_checked;
    }
    if (n_checked != 20) {
        ok = false;
        detail = "expected 20 golden lifts, found " + std::to_string(n_checked);
    }
    report(8, "fixed-locus descriptor table", ok, detail);
}

/* 9. CLI determinism and the flipped-convention negative control. */
std::pair<int, std::string> run_command(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return {-1, ""};
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void criterion_9(const std::string& cli) {
    bool ok = true;
    std::string detail;
    for (unsigned long seed : {17UL, 91UL}) {
        std::string cmd = cli + " compute --target gb:1,4,1,2 --twist anticanonical --bound 1,1" +
                          " --format json --seed " + std::to_string(seed);
        auto first = run_command(cmd);
        if (first.first != 0) {
            ok = false;
            detail = "compute exited " + std::to_string(first.first);
        }
        for (int i = 0; i < 2; ++i) {
            auto again = run_command(cmd);
            if (again != first) {
                ok = false;
                detail = "nondeterministic compute output";
            }
        }
    }
    auto flipped = run_command(cli +
                               " verify --target gb:1,4,1,2 --twist anticanonical --bound 1,1"
                               " --seed 5 --flip-convention");
    if (flipped.first != 1) {
        ok = false;
        detail = "flipped verify exited " + std::to_string(flipped.first);
    }
    if (flipped.second.find("mismatching charts:") == std::string::npos) {
        ok = false;
        detail = "flipped verify did not report mismatching charts";
    }
    auto straight = run_command(cli +
                                " verify --target gb:1,4,1,2 --twist anticanonical --bound 1,1"
                                " --seed 5");
    if (straight.first != 0) {
        ok = false;
        detail = "straight verify exited " + std::to_string(straight.first);
    }
    report(9, "CLI determinism and negative control", ok, detail);
}

/* 10. Mirror-theorem hypothesis reporting. */
void criterion_10() {
    auto status = [](const char* name) {
        BuiltTarget t = build_target(name);
        GitPresentation p = anticanonical_twist(t);
        return mirror_hypothesis_report(p, &t.cone, &t.anticanonical, !t.charts.empty());
    };
    bool ok = status("gb:1,4,1,2").status == MirrorReport::Status::Satisfied &&
              status("gb:2,7,1,3").status == MirrorReport::Status::Satisfied;
    MirrorReport bad = status("gb:1,3,1,2");
    ok = ok && bad.status == MirrorReport::Status::NotSatisfied &&
         bad.detail.find("index condition fails") != std::string::npos;
    report(10, "mirror hypothesis reporting", ok);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <source_dir> <cli_binary>\n";
        return 2;
    }
    std::string source_dir = argv[1], cli = argv[2];
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(source_dir);
    criterion_9(cli);
    criterion_10();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
