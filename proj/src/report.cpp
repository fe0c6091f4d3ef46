#include "endcb/report.hpp"

#include "endcb/parser.hpp"

namespace endcb {

using nlohmann::json;

namespace {

std::string flag_name(Flag f) { return is_genus(f) ? "g" : "!g"; }

Flag flag_from(const std::string& s) {
    return s == "g" ? Flag::genus : Flag::planar;
}

json gspec_to_json(const GenusSpec& g) {
    switch (g.kind) {
        case GenusSpec::Kind::none: return "none";
        case GenusSpec::Kind::all: return "all";
        case GenusSpec::Kind::at_least:
            return json{{"ge", g.threshold.str()}};
    }
    return "none";
}

} // namespace

json term_to_json(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return json{{"kind", "pt"}, {"flag", flag_name(t.flag)}};
        case Term::Kind::sum: {
            json children = json::array();
            for (const Term& c : t.children) children.push_back(term_to_json(c));
            return json{{"kind", "sum"}, {"children", children}};
        }
        case Term::Kind::omega:
            return json{{"kind", "omega"},
                        {"child", term_to_json(t.children[0])},
                        {"flag", flag_name(t.flag)}};
        case Term::Kind::line:
            return json{{"kind", "line"},
                        {"child", term_to_json(t.children[0])},
                        {"flag1", flag_name(t.flag)},
                        {"flag2", flag_name(t.flag2)}};
        case Term::Kind::cantor:
            return json{{"kind", "cantor"}, {"flag", flag_name(t.flag)}};
        case Term::Kind::cacc:
            return json{{"kind", "cacc"},
                        {"child", term_to_json(t.children[0])},
                        {"flag", flag_name(t.flag)}};
        case Term::Kind::ord:
            return json{{"kind", "ord"},
                        {"alpha", t.alpha.str()},
                        {"n", t.n},
                        {"gspec", gspec_to_json(t.gspec)}};
        case Term::Kind::fan: {
            json j{{"kind", "fan"},
                   {"schema", json{{"iter", term_to_json(t.children[0])}}},
                   {"accum", t.n},
                   {"flag1", flag_name(t.flag)},
                   {"mult", t.mult == FanMult::repeated ? "rep" : "once"}};
            if (t.n == 2) j["flag2"] = flag_name(t.flag2);
            return j;
        }
    }
    return {};
}

json surface_to_json(const Surface& s) {
    json j;
    if (s.infinite_genus())
        j["genus"] = "inf";
    else
        j["genus"] = *s.genus;
    j["ends"] = term_to_json(s.ends);
    return j;
}

Term term_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "pt") return pt(flag_from(j.at("flag").get<std::string>()));
    if (kind == "cantor") return cantor(flag_from(j.at("flag").get<std::string>()));
    if (kind == "sum") {
        std::vector<Term> children;
        for (const json& c : j.at("children")) children.push_back(term_from_json(c));
        return sum(std::move(children));
    }
    if (kind == "omega")
        return omega_term(term_from_json(j.at("child")),
                          flag_from(j.at("flag").get<std::string>()));
    if (kind == "line")
        return line(term_from_json(j.at("child")),
                    flag_from(j.at("flag1").get<std::string>()),
                    flag_from(j.at("flag2").get<std::string>()));
    if (kind == "cacc")
        return cacc(term_from_json(j.at("child")),
                    flag_from(j.at("flag").get<std::string>()));
    if (kind == "ord") {
        GenusSpec g = GenusSpec::none();
        const json& gj = j.at("gspec");
        if (gj.is_string()) {
            if (gj.get<std::string>() == "all") g = GenusSpec::all();
        } else {
            g = GenusSpec::at_least(parse_ordinal(gj.at("ge").get<std::string>()));
        }
        return ord_term(parse_ordinal(j.at("alpha").get<std::string>()),
                        j.at("n").get<std::uint64_t>(), g);
    }
    if (kind == "fan") {
        Term base = term_from_json(j.at("schema").at("iter"));
        int accum = static_cast<int>(j.at("accum").get<std::uint64_t>());
        FanMult mult =
            j.at("mult").get<std::string>() == "rep" ? FanMult::repeated : FanMult::once;
        std::optional<Flag> f2;
        if (j.contains("flag2")) f2 = flag_from(j.at("flag2").get<std::string>());
        return fan(std::move(base), accum, flag_from(j.at("flag1").get<std::string>()),
                   f2, mult);
    }
    throw std::invalid_argument("unknown term kind: " + kind);
}

Surface surface_from_json(const json& j) {
    Surface s;
    if (j.at("genus").is_string())
        s.genus = std::nullopt;
    else
        s.genus = j.at("genus").get<std::uint64_t>();
    s.ends = term_from_json(j.at("ends"));
    return s;
}

json verdict_to_json(const Verdict& v, bool explain) {
    json j;
    j["verdicts"] = {{"locally_cb", tri_str(v.locally_cb)},
                     {"cb_generated", tri_str(v.cb_generated)},
                     {"globally_cb", tri_str(v.globally_cb)}};
    if (!v.unknown_reason.empty()) j["unknown_reason"] = v.unknown_reason;
    json certs = json::array();
    for (const Obstruction& o : v.certificates)
        certs.push_back(json{{"kind", obstruction_kind(o)}, {"detail", obstruction_str(o)}});
    j["certificates"] = certs;
    if (v.witness) {
        json w;
        w["k_genus"] = v.witness->k_genus;
        w["k_boundary_count"] = v.witness->k_boundary_count;
        w["k_punctures"] = v.witness->k_punctures;
        json as = json::array();
        for (const Term& a : v.witness->a_pieces) as.push_back(print(a));
        w["a_pieces"] = as;
        json ps = json::array();
        for (const auto& p : v.witness->p_pieces)
            ps.push_back(json{{"piece", print(p.piece)}, {"a_index", p.a_index}});
        w["p_pieces"] = ps;
        j["witness"] = w;
    }
    if (explain) {
        json steps = json::array();
        for (const ExplanationStep& e : v.explanation) {
            json step{{"rule", e.rule}, {"statement", e.statement}};
            if (!e.detail.empty()) step["detail"] = e.detail;
            steps.push_back(step);
        }
        j["explanation"] = steps;
    }
    return j;
}

json poset_to_json(const ClassPoset& p) {
    json j;
    json cls = json::array();
    for (const EndClass& c : p.classes) {
        json e{{"germ", print(c.germ)}, {"cardinality", c.card.str()}};
        e["loci"] = c.loci;
        cls.push_back(e);
    }
    j["classes"] = cls;
    json fams = json::array();
    for (const ClassFamily& f : p.families)
        fams.push_back(json{{"family", f.str()}, {"confined", f.climbing_confined}});
    j["families"] = fams;
    json leq = json::array();
    for (std::size_t a = 0; a < p.classes.size(); ++a)
        for (std::size_t b = 0; b < p.classes.size(); ++b)
            if (a != b && p.leq(a, b) && !p.leq(b, a))
                leq.push_back(json::array({a, b}));
    j["strictly_below"] = leq;
    return j;
}

std::string verdict_text(const Verdict& v, bool explain) {
    std::string out;
    out += "locally CB:   " + std::string(tri_str(v.locally_cb)) + "\n";
    out += "CB generated: " + std::string(tri_str(v.cb_generated)) + "\n";
    out += "globally CB:  " + std::string(tri_str(v.globally_cb)) + "\n";
    if (!v.unknown_reason.empty()) out += "reason:       " + v.unknown_reason + "\n";
    for (const Obstruction& o : v.certificates)
        out += "certificate:  [" + obstruction_kind(o) + "] " + obstruction_str(o) + "\n";
    if (v.witness) {
        out += "witness:      K with genus " + std::to_string(v.witness->k_genus) +
               ", " + std::to_string(v.witness->k_boundary_count) +
               " boundary components, " + std::to_string(v.witness->k_punctures) +
               " punctures\n";
        for (const Term& a : v.witness->a_pieces)
            out += "  A piece:    " + print(a) + "\n";
        for (const auto& p : v.witness->p_pieces)
            out += "  P piece:    " + print(p.piece) + " (absorbs into A" +
                   std::to_string(p.a_index) + ")\n";
    }
    if (explain) {
        out += "trace:\n";
        for (const ExplanationStep& e : v.explanation) {
            out += "  [" + e.rule + "] " + e.statement + "\n";
            if (!e.detail.empty()) out += "      " + e.detail + "\n";
        }
    }
    return out;
}

} // namespace endcb
