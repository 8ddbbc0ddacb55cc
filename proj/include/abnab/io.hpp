#ifndef ABNAB_IO_HPP
#define ABNAB_IO_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "abnab/errors.hpp"
#include "abnab/factored_term.hpp"
#include "abnab/ifunction.hpp"
#include "abnab/linear_form.hpp"
#include "abnab/localization.hpp"
#include "abnab/presentation.hpp"
#include "abnab/rational.hpp"
#include "abnab/symbol.hpp"
#include "abnab/targets.hpp"

namespace abnab {

using json = nlohmann::ordered_json;

/* ---- canonical JSON for the algebra types ---------------------------- */

inline json symbol_to_json(const Symbol& s) {
    const char* kind = s.kind == SymbolKind::ChernRoot ? "chern"
                       : s.kind == SymbolKind::EquivariantParam ? "lambda"
                                                                : "z";
    return json{{"kind", kind}, {"group", s.group}, {"pos", s.pos}};
}

inline Symbol symbol_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw SchemaError("symbol: expected object with kind");
    std::string kind = j.at("kind").get<std::string>();
    int group = j.value("group", 0), pos = j.value("pos", 0);
    if (kind == "chern") return Symbol::chern(group, pos);
    if (kind == "lambda") return Symbol::lambda(group, pos);
    if (kind == "z") return Symbol::z();
    throw SchemaError("symbol: unknown kind " + kind);
}

inline json linear_form_to_json(const LinearForm& f) {
    json coeffs = json::array();
    for (const auto& [s, c] : f.coeffs())
        coeffs.push_back(json{{"symbol", symbol_to_json(s)}, {"coeff", c.str()}});
    return json{{"coeffs", coeffs}, {"z", f.z_mult()}};
}

inline LinearForm linear_form_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("linear form: expected object");
    LinearForm f;
    for (const auto& entry : j.value("coeffs", json::array()))
        f.set(symbol_from_json(entry.at("symbol")), Rational::parse(entry.at("coeff").get<std::string>()));
    f.set_z_mult(j.value("z", 0L));
    return f;
}

inline json factored_term_to_json(const FactoredTerm& t) {
    json factors = json::array();
    for (const auto& [f, e] : t.factors())
        factors.push_back(json{{"form", linear_form_to_json(f)}, {"exp", e}});
    return json{{"scalar", t.scalar().str()}, {"factors", factors}};
}

inline FactoredTerm factored_term_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("factored term: expected object");
    FactoredTerm t(Rational::parse(j.at("scalar").get<std::string>()));
    for (const auto& entry : j.value("factors", json::array()))
        t.multiply_factor(linear_form_from_json(entry.at("form")), entry.at("exp").get<long>());
    return t;
}

/* ---- presentation schema --------------------------------------------- */

namespace detail {

inline IntVec int_vec_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected array of integers");
    IntVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw SchemaError(std::string(what) + ": expected integer entries");
        v.push_back(x.get<long>());
    }
    return v;
}

inline std::vector<IntVec> int_mat_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected array of arrays");
    std::vector<IntVec> m;
    for (const auto& row : j) m.push_back(int_vec_from_json(row, what));
    return m;
}

inline json int_vec_to_json(const IntVec& v) { return json(v); }

inline json int_mat_to_json(const std::vector<IntVec>& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(json(row));
    return out;
}

} // namespace detail

struct PresentationInput {
    GitPresentation presentation;
    EffectiveCone cone;
    bool has_cone = false;
    std::vector<IntVec> anticanonical_holder; // empty or one vector
};

inline PresentationInput presentation_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("presentation: expected object");
    if (!j.contains("schema_version")) throw SchemaError("presentation: missing schema_version");
    if (j.at("schema_version").get<long>() != 1)
        throw SchemaError("presentation: unsupported schema_version");
    for (const char* field : {"rank_t", "weights_v"})
        if (!j.contains(field)) throw SchemaError(std::string("presentation: missing ") + field);

    PresentationInput in;
    GitPresentation& p = in.presentation;
    p.rank_t = j.at("rank_t").get<long>();
    p.weights_v = detail::int_mat_from_json(j.at("weights_v"), "weights_v");
    if (j.contains("roots")) p.roots = detail::int_mat_from_json(j.at("roots"), "roots");
    if (j.contains("weyl")) {
        const json& w = j.at("weyl");
        if (w.contains("gl_blocks"))
            p.weyl = WeylAction::gl_blocks(detail::int_vec_from_json(w.at("gl_blocks"), "gl_blocks"));
        else if (w.contains("generators")) {
            std::vector<IntMat> gens;
            for (const auto& g : w.at("generators"))
                gens.push_back(detail::int_mat_from_json(g, "weyl generator"));
            p.weyl = WeylAction(std::move(gens));
        } else
            throw SchemaError("weyl: need gl_blocks or generators");
    }
    if (j.contains("theta")) p.theta = detail::int_vec_from_json(j.at("theta"), "theta");
    p.s_rank = j.value("s_rank", 0L);
    if (j.contains("s_weights")) p.s_weights = detail::int_mat_from_json(j.at("s_weights"), "s_weights");
    if (j.contains("twist")) {
        const json& t = j.at("twist");
        p.twist_weights = detail::int_mat_from_json(t.at("weights"), "twist weights");
        if (t.contains("s_weights"))
            p.twist_s_weights = detail::int_mat_from_json(t.at("s_weights"), "twist s_weights");
    }
    if (j.contains("chern_blocks"))
        p.chern_blocks = detail::int_vec_from_json(j.at("chern_blocks"), "chern_blocks");
    if (j.contains("s_blocks")) p.s_blocks = detail::int_vec_from_json(j.at("s_blocks"), "s_blocks");
    if (j.contains("class_basis"))
        p.class_basis = detail::int_mat_from_json(j.at("class_basis"), "class_basis");
    if (j.contains("cone")) {
        const json& c = j.at("cone");
        in.cone.inequalities = detail::int_mat_from_json(c.at("inequalities"), "cone inequalities");
        if (c.contains("generators"))
            in.cone.generators = detail::int_mat_from_json(c.at("generators"), "cone generators");
        in.cone.provenance = EffectiveCone::Provenance::UserSupplied;
        in.has_cone = true;
    }
    if (j.contains("anticanonical"))
        in.anticanonical_holder = {detail::int_vec_from_json(j.at("anticanonical"), "anticanonical")};
    try {
        p.finalize();
    } catch (const MalformedPresentation& e) {
        throw SchemaError(std::string("presentation: ") + e.what());
    }
    return in;
}

inline json presentation_to_json(const PresentationInput& in) {
    const GitPresentation& p = in.presentation;
    json j;
    j["schema_version"] = 1;
    j["rank_t"] = p.rank_t;
    j["weights_v"] = detail::int_mat_to_json(p.weights_v);
    j["roots"] = detail::int_mat_to_json(p.roots);
    if (!p.weyl.generators().empty()) {
        json gens = json::array();
        for (const auto& g : p.weyl.generators()) gens.push_back(detail::int_mat_to_json(g));
        j["weyl"] = json{{"generators", gens}};
    }
    j["theta"] = detail::int_vec_to_json(p.theta);
    j["s_rank"] = p.s_rank;
    j["s_weights"] = detail::int_mat_to_json(p.s_weights);
    if (!p.twist_weights.empty()) {
        json t;
        t["weights"] = detail::int_mat_to_json(p.twist_weights);
        t["s_weights"] = detail::int_mat_to_json(p.twist_s_weights);
        j["twist"] = t;
    }
    j["chern_blocks"] = detail::int_vec_to_json(IntVec(p.chern_blocks.begin(), p.chern_blocks.end()));
    j["s_blocks"] = detail::int_vec_to_json(IntVec(p.s_blocks.begin(), p.s_blocks.end()));
    j["class_basis"] = detail::int_mat_to_json(p.class_basis);
    if (in.has_cone) {
        json c;
        c["inequalities"] = detail::int_mat_to_json(in.cone.inequalities);
        c["generators"] = detail::int_mat_to_json(in.cone.generators);
        j["cone"] = c;
    }
    if (!in.anticanonical_holder.empty())
        j["anticanonical"] = detail::int_vec_to_json(in.anticanonical_holder[0]);
    return j;
}

/* ---- emitters -------------------------------------------------------- */

inline json coefficient_to_json(const IFunctionCoefficient& c) {
    json summands = json::array();
    for (const auto& [lift, t] : c.summands)
        summands.push_back(json{{"lift", json(lift)}, {"term", factored_term_to_json(t)}});
    return json{{"class", json(c.class_values)},
                {"homogeneity_degree", c.homogeneity_degree},
                {"summands", summands}};
}

inline json series_to_json(const IFunctionSeries& s) {
    json coeffs = json::array();
    for (const auto& [vals, c] : s.coefficients) coeffs.push_back(coefficient_to_json(c));
    return json{{"unit", true}, {"coefficients", coeffs}};
}

namespace detail {

inline std::string q_monomial(const IntVec& vals) {
    std::string out = "q^[";
    for (size_t i = 0; i < vals.size(); ++i) out += (i ? "," : "") + std::to_string(vals[i]);
    return out + "]";
}

} // namespace detail

inline std::string coefficient_to_text(const IFunctionCoefficient& c) {
    std::string out = detail::q_monomial(c.class_values) + "  (degree " +
                      std::to_string(c.homogeneity_degree) + ")\n";
    if (c.summands.empty()) out += "  (no lifts)\n";
    for (const auto& [lift, t] : c.summands) {
        out += "  lift [";
        for (size_t i = 0; i < lift.size(); ++i) out += (i ? "," : "") + std::to_string(lift[i]);
        out += "]: " + t.str() + "\n";
    }
    return out;
}

inline std::string series_to_text(const IFunctionSeries& s) {
    std::string out = "I = 1 + sum of:\n";
    for (const auto& [vals, c] : s.coefficients) out += coefficient_to_text(c);
    return out;
}

/* ---- LaTeX ----------------------------------------------------------- */

inline std::string symbol_to_latex(const Symbol& s) {
    switch (s.kind) {
        case SymbolKind::ChernRoot: {
            const char* names = "xyuvw";
            std::string base = s.group < 5 ? std::string(1, names[s.group])
                                           : "c^{(" + std::to_string(s.group) + ")}";
            return base + "_{" + std::to_string(s.pos + 1) + "}";
        }
        case SymbolKind::EquivariantParam:
            return "\\lambda^{" + std::to_string(s.group + 1) + "}_{" + std::to_string(s.pos + 1) + "}";
        case SymbolKind::ZVariable:
            return "z";
    }
    return "?";
}

inline std::string linear_form_to_latex(const LinearForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    auto coeff_prefix = [&](const Rational& c) {
        std::string cs = c.str();
        if (first) {
            if (cs == "1") return std::string();
            if (cs == "-1") return std::string("-");
            return cs + " ";
        }
        if (cs == "1") return std::string(" + ");
        if (cs == "-1") return std::string(" - ");
        if (c.sign() < 0) return " - " + (-c).str() + " ";
        return " + " + cs + " ";
    };
    for (const auto& [s, c] : f.coeffs()) {
        out += coeff_prefix(c) + symbol_to_latex(s);
        first = false;
    }
    if (f.z_mult() != 0) {
        out += coeff_prefix(Rational(f.z_mult())) + "z";
        first = false;
    }
    return out;
}

inline std::string factored_term_to_latex(const FactoredTerm& t) {
    if (t.is_zero()) return "0";
    std::string num, den;
    for (const auto& [f, e] : t.factors()) {
        std::string piece = "\\left(" + linear_form_to_latex(f) + "\\right)";
        long a = e > 0 ? e : -e;
        if (a != 1) piece += "^{" + std::to_string(a) + "}";
        (e > 0 ? num : den) += piece;
    }
    std::string head;
    if (!t.scalar().is_one() || num.empty()) head = t.scalar().str();
    if (!num.empty()) head += (head.empty() ? "" : "\\,") + num;
    if (den.empty()) return head;
    return "\\frac{" + head + "}{" + den + "}";
}

inline std::string coefficient_to_latex(const IFunctionCoefficient& c) {
    std::string q = "q^{(";
    for (size_t i = 0; i < c.class_values.size(); ++i)
        q += (i ? "," : "") + std::to_string(c.class_values[i]);
    q += ")}";
    std::string out = q + " \\Bigl[";
    bool first = true;
    for (const auto& [lift, t] : c.summands) {
        if (!first) out += " + ";
        out += factored_term_to_latex(t);
        first = false;
    }
    if (first) out += "0";
    return out + "\\Bigr]";
}

inline std::string series_to_latex(const IFunctionSeries& s) {
    std::string out = "I = 1";
    for (const auto& [vals, c] : s.coefficients) out += " + " + coefficient_to_latex(c);
    return out;
}

/* ---- reports --------------------------------------------------------- */

inline json validation_report_to_json(const ValidationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        const char* st = c.status == ValidationCheck::Status::Pass ? "pass"
                         : c.status == ValidationCheck::Status::Fail ? "fail"
                                                                     : "skipped";
        checks.push_back(json{{"name", c.name}, {"status", st}, {"detail", c.detail}});
    }
    return json{{"checks", checks}, {"all_passed", rep.all_passed()}};
}

inline json mirror_report_to_json(const MirrorReport& rep) {
    const char* st = rep.status == MirrorReport::Status::Satisfied ? "satisfied"
                     : rep.status == MirrorReport::Status::NotSatisfied ? "not satisfied"
                                                                        : "unknown";
    return json{{"status", st},
                {"fano", rep.fano},
                {"fano_index", rep.fano_index},
                {"index_at_least_two", rep.index_at_least_two},
                {"convex", rep.convex},
                {"det_inequality", rep.det_inequality},
                {"isolated_fixed_points", rep.isolated_fixed_points},
                {"detail", rep.detail}};
}

inline json descriptor_to_json(const FixedLocusDescriptor& d) {
    json j;
    j["lift"] = json(d.lift);
    j["sorted_lift"] = json(d.sorted_lift);
    j["permutation_applied"] = d.permutation_applied;
    j["parabolic_roots"] = detail::int_mat_to_json(d.parabolic_roots);
    json retained = json::array();
    for (size_t i : d.retained_weights) retained.push_back(i);
    j["retained_weights"] = retained;
    j["dim_v_beta"] = d.dim_v_beta;
    j["dim_p"] = d.dim_p;
    j["dim_f"] = d.dim_f;
    if (!d.pattern.empty()) j["pattern"] = json(d.pattern);
    return j;
}

inline std::string descriptor_to_text(const FixedLocusDescriptor& d) {
    std::string out = "lift [";
    for (size_t i = 0; i < d.lift.size(); ++i) out += (i ? "," : "") + std::to_string(d.lift[i]);
    out += "]";
    if (d.permutation_applied) {
        out += " sorted to [";
        for (size_t i = 0; i < d.sorted_lift.size(); ++i)
            out += (i ? "," : "") + std::to_string(d.sorted_lift[i]);
        out += "]";
    }
    out += "\n  dim V_beta = " + std::to_string(d.dim_v_beta) +
           ", dim P = " + std::to_string(d.dim_p) + ", dim F = " + std::to_string(d.dim_f) + "\n";
    out += "  parabolic roots: " + std::to_string(d.parabolic_roots.size()) + "\n";
    for (const auto& row : d.pattern) out += "  " + row + "\n";
    return out;
}

} // namespace abnab

#endif
