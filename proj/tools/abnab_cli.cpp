// Command-line surface for the I-function engine: series assembly,
// invariant verification, fixed-locus descriptors, localization integrals.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abnab/closed_forms.hpp"
#include "abnab/io.hpp"

namespace {

using namespace abnab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitUnbounded = 3;

IntVec parse_int_list(const std::string& s) {
    IntVec out;
    std::stringstream ss(s);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            out.push_back(std::stol(piece));
        } catch (...) {
            throw SchemaError("bad integer list: " + s);
        }
    }
    return out;
}

struct LoadedInput {
    GitPresentation presentation;
    EffectiveCone cone;
    std::vector<FixedPointChart> charts;
    std::string target_name; // empty for file input
    IntVec anticanonical;    // empty if unknown
    long fano_index = 0;
};

LoadedInput load_input(const std::string& target, const std::string& input_path, bool twist,
                       bool flip) {
    LoadedInput in;
    if (!target.empty()) {
        BuiltTarget t = build_target(target);
        in.presentation = twist ? anticanonical_twist(t) : t.presentation;
        in.cone = t.cone;
        in.charts = t.charts;
        in.target_name = t.name;
        in.anticanonical = t.anticanonical;
        in.fano_index = t.fano_index;
    } else {
        if (twist) throw SchemaError("--twist anticanonical requires a built-in target");
        std::ifstream f(input_path);
        if (!f) throw SchemaError("cannot open input file: " + input_path);
        json j;
        try {
            j = json::parse(f);
        } catch (const std::exception& e) {
            throw SchemaError(std::string("JSON parse error: ") + e.what());
        }
        PresentationInput pi = presentation_from_json(j);
        in.presentation = pi.presentation;
        if (pi.has_cone) in.cone = pi.cone;
        if (!pi.anticanonical_holder.empty()) in.anticanonical = pi.anticanonical_holder[0];
    }
    in.presentation.flip_equivariant_sign = flip;
    return in;
}

IntVec resolve_bounds(const std::string& bound_str, size_t n_classes) {
    IntVec bounds = parse_int_list(bound_str);
    if (bounds.size() == 1 && n_classes > 1) bounds.assign(n_classes, bounds[0]);
    if (bounds.size() != n_classes)
        throw SchemaError("bound count does not match the number of degree classes");
    for (long b : bounds)
        if (b < 0) throw SchemaError("bounds must be nonnegative");
    return bounds;
}

int cmd_compute(const LoadedInput& in, const std::string& bound_str, bool equivariant,
                const std::string& format) {
    const GitPresentation& p = in.presentation;
    if (p.class_basis.empty()) throw SchemaError("input provides no class basis");
    IntVec bounds = resolve_bounds(bound_str, p.class_basis.size());
    CoefficientRequest req;
    req.twisted = !p.twist_weights.empty();
    req.equivariant = equivariant && p.equivariant_capable();
    IFunctionSeries series = assemble_series(p, in.cone, bounds, req);
    if (format == "json")
        std::cout << series_to_json(series).dump(2) << "\n";
    else if (format == "latex")
        std::cout << series_to_latex(series) << "\n";
    else
        std::cout << series_to_text(series);
    return kExitOk;
}

struct VerifyState {
    bool all_ok = true;
    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) all_ok = false;
    }
};

// evaluate numerically over Q at a fixed z value, retrying on poles
Rational eval_at(const FactoredTerm& t, const std::map<Symbol, Rational>& a, const Rational& z) {
    return t.evaluate<Rational>(a, z);
}

int cmd_verify(const LoadedInput& in, const std::string& bound_str, unsigned long seed, bool flip) {
    const GitPresentation& p = in.presentation;
    std::cout << "seed = " << seed << ", convention = " << (flip ? "flipped" : "standard") << "\n";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-10000, 10000);
    VerifyState vs;

    const IntVec* antic = in.anticanonical.empty() ? nullptr : &in.anticanonical;
    ValidationReport vrep = validate(p, &in.cone, antic);
    vs.report("presentation_valid", vrep.all_passed());

    if (p.class_basis.empty()) {
        vs.report("series_assembly", false, "no class basis");
        return kExitVerifyFailed;
    }
    IntVec bounds = resolve_bounds(bound_str, p.class_basis.size());
    CoefficientRequest req;
    req.twisted = !p.twist_weights.empty();
    req.equivariant = p.equivariant_capable();
    IFunctionSeries series = assemble_series(p, in.cone, bounds, req);

    // homogeneity: doubling every symbol and z scales each summand by 2^D
    {
        bool ok = true;
        std::string bad;
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& [lift, t] : coeff.summands) {
                if (t.is_zero()) continue;
                for (int attempt = 0;; ++attempt) {
                    std::map<Symbol, Rational> a, a2;
                    for (const Symbol& s : collect_symbols({t})) {
                        a[s] = Rational(dist(rng));
                        a2[s] = a[s] * Rational(2);
                    }
                    Rational z(dist(rng));
                    try {
                        Rational v1 = eval_at(t, a, z);
                        Rational v2 = eval_at(t, a2, z * Rational(2));
                        if (v2 != Rational::pow(Rational(2), coeff.homogeneity_degree) * v1) {
                            ok = false;
                            bad = "summand at " + detail::q_monomial(vals);
                        }
                        break;
                    } catch (const PoleAtSpecialization&) {
                        if (attempt > 32) throw;
                    }
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        vs.report("homogeneity", ok, bad);
    }

    // Weyl equivariance: structural equality of the mapped summand
    {
        bool ok = true;
        auto coords = p.coordinate_symbols();
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& [lift, t] : coeff.summands) {
                for (const auto& g : p.weyl.generators()) {
                    IntVec wl = mat_vec(mat_transpose(mat_inverse(g)), lift);
                    FactoredTerm lhs = summand(p, wl, req, &in.cone);
                    FactoredTerm rhs = t.transformed_chern(g, coords);
                    if (lhs != rhs) ok = false;
                }
            }
        }
        vs.report("weyl_equivariance", ok);
    }

    // chart pole-freeness of every restricted coefficient
    if (!in.charts.empty()) {
        bool ok = true;
        std::string bad;
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& chart : in.charts) {
                auto terms = restrict_coefficient(coeff, chart);
                if (!restriction_pole_free(terms, rng)) {
                    ok = false;
                    bad = detail::q_monomial(vals) + " at chart " + chart.label;
                }
            }
        }
        vs.report("chart_pole_free", ok, bad);
    }

    // closed-form chart oracle where one exists
    if (!in.target_name.empty() && in.target_name[0] == 'p' && in.target_name.rfind("pp:", 0) != 0) {
        long N = p.s_rank;
        bool ok = true;
        std::vector<std::string> mismatched;
        for (const auto& [vals, coeff] : series.coefficients) {
            for (long i = 1; i <= N; ++i) {
                const auto& chart = in.charts[i - 1];
                auto terms = restrict_coefficient(coeff, chart);
                FactoredTerm oracle =
                    closed_forms::projective_chart_coefficient(N, i, vals[0], req.twisted);
                std::set<Symbol> syms = collect_symbols(terms);
                auto so = collect_symbols({oracle});
                syms.insert(so.begin(), so.end());
                std::vector<FactoredTerm> all = terms;
                all.push_back(oracle);
                for (int draw = 0; draw < 5; ++draw) {
                    Specialization s = draw_generic(syms, all, rng);
                    if (sum_evaluate(terms, s) != evaluate_factored(oracle, s)) {
                        ok = false;
                        mismatched.push_back(chart.label);
                        break;
                    }
                }
            }
        }
        std::string det;
        for (const auto& lbl : mismatched) det += (det.empty() ? "mismatching charts: " : ", ") + lbl;
        vs.report("closed_form_oracle", ok, det);
    } else if (in.target_name.rfind("gb:", 0) == 0 && req.twisted) {
        auto params = parse_int_list(in.target_name.substr(3));
        long k = params[0], n = params[1], l = params[2], m = params[3];
        bool ok = true;
        std::vector<std::string> mismatched;
        for (const auto& [vals, coeff] : series.coefficients) {
            for (const auto& chart : in.charts) {
                // recover (I, J) from the chart label
                std::vector<long> I, J;
                {
                    std::string lbl = chart.label;
                    size_t i1 = lbl.find('{'), i2 = lbl.find('}');
                    size_t j1 = lbl.find('{', i2), j2 = lbl.find('}', j1);
                    I = parse_int_list(lbl.substr(i1 + 1, i2 - i1 - 1));
                    J = parse_int_list(lbl.substr(j1 + 1, j2 - j1 - 1));
                }
                auto terms = restrict_coefficient(coeff, chart);
                auto oracle = closed_forms::grassmann_bundle_chart_coefficient(k, n, l, m, I, J,
                                                                               vals[0], vals[1]);
                std::set<Symbol> syms = collect_symbols(terms);
                auto so = collect_symbols(oracle);
                syms.insert(so.begin(), so.end());
                std::vector<FactoredTerm> all = terms;
                all.insert(all.end(), oracle.begin(), oracle.end());
                bool chart_ok = true;
                for (int draw = 0; draw < 5; ++draw) {
                    Specialization s = draw_generic(syms, all, rng);
                    if (sum_evaluate(terms, s) != sum_evaluate(oracle, s)) chart_ok = false;
                }
                if (!chart_ok) {
                    ok = false;
                    mismatched.push_back(detail::q_monomial(vals) + " " + chart.label);
                }
            }
        }
        std::string det;
        for (const auto& lbl : mismatched) det += (det.empty() ? "mismatching charts: " : ", ") + lbl;
        vs.report("closed_form_oracle", ok, det);
    }

    // mirror-theorem hypothesis report (informational, never a failure)
    {
        MirrorReport mrep = mirror_hypothesis_report(p, &in.cone, antic, !in.charts.empty());
        std::cout << "mirror hypotheses: "
                  << (mrep.status == MirrorReport::Status::Satisfied      ? "satisfied"
                      : mrep.status == MirrorReport::Status::NotSatisfied ? "not satisfied"
                                                                          : "unknown")
                  << " (" << mrep.detail << ")\n";
    }

    return vs.all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_fixed_locus(const std::string& target, const std::string& lift_str,
                    const std::string& format) {
    BuiltTarget t = build_target(target);
    IntVec lift = parse_int_list(lift_str);
    FixedLocusDescriptor d = fixed_locus_descriptor(t, lift);
    if (format == "json")
        std::cout << descriptor_to_json(d).dump(2) << "\n";
    else
        std::cout << descriptor_to_text(d);
    return kExitOk;
}

int cmd_integrate(const LoadedInput& in, const std::string& class_str, unsigned long seed,
                  bool equivariant) {
    if (in.charts.empty()) throw SchemaError("integrate requires a built-in target with charts");
    std::mt19937_64 rng(seed);
    LocalizedClass cls;
    if (class_str == "unit") {
        cls = localized_unit(in.charts);
    } else if (class_str == "euler") {
        cls = localized_tangent_euler(in.charts);
    } else {
        IntVec vals = parse_int_list(class_str);
        CoefficientRequest req;
        req.twisted = !in.presentation.twist_weights.empty();
        req.equivariant = equivariant && in.presentation.equivariant_capable();
        IFunctionCoefficient coeff = assemble_coefficient(in.presentation, in.cone, vals, req);
        cls = localize(coeff, in.charts);
    }
    ZRationalFunction val = integrate(cls, in.charts, rng);
    std::cout << val.str("z") << "\n";
    return kExitOk;
}

int cmd_targets(const std::string& target) {
    if (target.empty()) {
        std::cout << "built-in targets:\n"
                  << "  p{n}          projective space P^n\n"
                  << "  pp:n1,n2,...  product of projective spaces\n"
                  << "  gr:k,n        Grassmannian Gr(k,n)\n"
                  << "  gb:k,n,l,m    Grassmann bundle Gr_{Gr(k,n)}(l, U^m)\n";
        return kExitOk;
    }
    BuiltTarget t = build_target(target);
    json j;
    j["name"] = t.name;
    j["rank_t"] = t.presentation.rank_t;
    j["n_weights"] = t.presentation.weights_v.size();
    j["n_roots"] = t.presentation.roots.size();
    j["n_charts"] = t.charts.size();
    j["anticanonical"] = json(t.anticanonical);
    j["fano_index"] = t.fano_index;
    ValidationReport vrep = validate(t.presentation, &t.cone, &t.anticanonical);
    j["validation"] = validation_report_to_json(vrep);
    MirrorReport mrep =
        mirror_hypothesis_report(t.presentation, &t.cone, &t.anticanonical, !t.charts.empty());
    j["mirror_hypotheses"] = mirror_report_to_json(mrep);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact quasimap I-function engine for GIT quotients"};
    app.require_subcommand(1);

    std::string target, input_path, bound_str = "0", format = "text", twist, class_str, lift_str;
    unsigned long seed = 0;
    bool have_seed = false, flip = false, non_equivariant = false;
    if (const char* env = std::getenv("ABNAB_SEED")) {
        seed = std::stoul(env);
        have_seed = true;
    }

    auto add_common = [&](CLI::App* sub, bool needs_seed) {
        sub->add_option("--target", target, "built-in target name (p{n}, pp:..., gr:k,n, gb:k,n,l,m)");
        sub->add_option("--input", input_path, "JSON presentation file");
        sub->add_option("--bound", bound_str, "per-class degree bounds, comma separated");
        sub->add_option("--twist", twist, "twist: anticanonical");
        sub->add_option("--format", format, "output format: json|text|latex");
        sub->add_flag("--flip-convention", flip, "flip the equivariant lift sign (negative control)");
        sub->add_flag("--non-equivariant", non_equivariant, "drop the equivariant parameters");
        auto* opt = sub->add_option_function<unsigned long>(
            "--seed", [&](unsigned long v) { seed = v; have_seed = true; },
            "seed for specialization draws");
        if (needs_seed && !have_seed) opt->required();
    };

    auto* compute = app.add_subcommand("compute", "assemble the I-function series up to a bound");
    add_common(compute, false);
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify, true);
    auto* fixed = app.add_subcommand("fixed-locus", "describe the fixed locus of a degree lift");
    add_common(fixed, false);
    fixed->add_option("--lift", lift_str, "degree lift, comma separated")->required();
    auto* integ = app.add_subcommand("integrate", "Atiyah-Bott integral of a class");
    add_common(integ, true);
    integ->add_option("--class", class_str, "class values, or 'unit' / 'euler'")->required();
    auto* targets = app.add_subcommand("targets", "list or inspect built-in targets");
    targets->add_option("--target", target, "built-in target name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!twist.empty() && twist != "anticanonical") throw SchemaError("unknown twist: " + twist);
        if (app.got_subcommand(targets)) return cmd_targets(target);
        if (target.empty() && input_path.empty())
            throw SchemaError("need --target or --input");
        if (app.got_subcommand(fixed)) return cmd_fixed_locus(target, lift_str, format);
        LoadedInput in = load_input(target, input_path, twist == "anticanonical", flip);
        if (app.got_subcommand(compute)) return cmd_compute(in, bound_str, !non_equivariant, format);
        if (app.got_subcommand(verify)) return cmd_verify(in, bound_str, seed, flip);
        if (app.got_subcommand(integ)) return cmd_integrate(in, class_str, seed, !non_equivariant);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const InvalidFamilyParams& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const UnboundedFiber& e) {
        std::cerr << "unbounded fiber: " << e.what() << "\n";
        return kExitUnbounded;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}
