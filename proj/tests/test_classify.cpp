#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endcb/classify.hpp"
#include "endcb/parser.hpp"

using namespace endcb;

namespace {
Term T(const std::string& s) { return parse_term(s); }
Surface S(const std::string& s) { return parse_surface(s); }
bool has_cert(const Verdict& v, const std::string& kind) {
    for (const Obstruction& o : v.certificates)
        if (obstruction_kind(o) == kind) return true;
    return false;
}
} // namespace

TEST_CASE("self-similarity decisions") {
    CHECK(is_self_similar(T("ord(w,1)")) == Tri::yes);
    CHECK(is_self_similar(T("ord(w,1,all)")) == Tri::yes);
    CHECK(is_self_similar(T("ord(w^2,1,ge(2))")) == Tri::yes);
    CHECK(is_self_similar(T("ord(w,2)")) == Tri::no);
    CHECK(is_self_similar(T("ord(1,2,all)")) == Tri::no);
    CHECK(is_self_similar(T("cantor")) == Tri::yes);
    CHECK(is_self_similar(T("cacc(pt)")) == Tri::yes);
    CHECK(is_self_similar(T("pt g")) == Tri::yes);
    CHECK(is_self_similar(T("sum(pt g, pt g)")) == Tri::no);
    CHECK(is_self_similar(T("sum(cantor, cantor g)")) == Tri::no);
    CHECK(is_self_similar(T("line(sum(cantor g, cantor), g, g)")) == Tri::no);
    CHECK(is_self_similar(T("fan(iter(cacc(pt,g)), one)")) == Tri::yes);
    CHECK(is_self_similar(T("omega(sum(cantor, cacc(pt)))")) == Tri::yes);
}

TEST_CASE("self-similar grid: ord(a, n, g) is self-similar exactly when n = 1") {
    const char* alphas[] = {"1", "2", "w", "w+1", "w^2", "w^w"};
    const char* gspecs[] = {"none", "all", "ge(1)", "ge(w)"};
    for (const char* a : alphas) {
        for (int n = 1; n <= 3; ++n) {
            for (const char* g : gspecs) {
                Term t = T("ord(" + std::string(a) + "," + std::to_string(n) + "," + g +
                           ")");
                Tri got = is_self_similar(t);
                REQUIRE(got != Tri::unknown);
                CHECK((got == Tri::yes) == (n == 1));
            }
        }
    }
}

TEST_CASE("telescoping decisions") {
    // no countable end space is telescoping
    CHECK(is_telescoping(S("surface genus=0 ends=ord(w,2)")) == Tri::no);
    CHECK(is_telescoping(S("surface genus=inf ends=sum(pt g, pt g)")) == Tri::no);
    // the two-Cantor-sets example
    CHECK(is_telescoping(S(
              "surface genus=inf ends=line(sum(cantor g, cantor), g, g)")) == Tri::yes);
    // the near-miss: one compactification point accumulated by genus, one not
    CHECK(is_telescoping(S("surface genus=inf ends=line(sum(cantor, cantor), g, !g)")) ==
          Tri::no);
    // genus placement along the slabs must match the compactification flags
    CHECK(is_telescoping(S("surface genus=inf ends=line(sum(cantor, cantor), g, g)")) ==
          Tri::no);
    // planar version of the two-Cantor-sets example
    CHECK(is_telescoping(S("surface genus=0 ends=line(sum(cantor, cacc(pt)), !g, !g)")) ==
          Tri::yes);
    // finite nonzero genus is never telescoping
    CHECK(is_telescoping(S("surface genus=2 ends=line(sum(cantor, cantor), !g, !g)")) ==
          Tri::no);
    // a limit-type or infinite-rank family disqualifies the invariant pair
    CHECK(is_telescoping(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)")) ==
          Tri::no);
    CHECK(is_telescoping(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two)")) ==
          Tri::no);
    // two equivalent one-sided stacks: structurally consistent with a pair,
    // beyond the line-shaped rule
    CHECK(is_telescoping(
              S("surface genus=inf ends=sum(omega(cacc(pt), g), omega(cacc(pt), g))")) ==
          Tri::unknown);
}

TEST_CASE("stabilization failures the anchor machinery must refute") {
    // a rank family climbing to one maximal end with nowhere to put the
    // displaced types: countable material cannot hide in the other chunks
    Verdict v = classify(S("surface genus=0 ends=sum(fan(iter(cacc(pt)), one), ord(w,1))"));
    CHECK(v.locally_cb == Tri::no);
    CHECK(v.cb_generated == Tri::no);
    CHECK(v.globally_cb == Tri::no);

    v = classify(S("surface genus=0 ends=sum(cantor, ord(w,1))"));
    CHECK(v.locally_cb == Tri::no);

    v = classify(S("surface genus=0 ends=sum(cantor, ord(1,1))"));
    CHECK(v.locally_cb == Tri::no);

    // but a chunk of higher rank absorbs lower countable chunks across
    v = classify(S("surface genus=1 ends=ord(w,2)"));
    CHECK(v.locally_cb == Tri::yes);

    // genus flares anchor nothing planar: a planar flute next to an all-genus
    // flute has no home for its punctures
    v = classify(S("surface genus=inf ends=sum(ord(1,1,all), ord(1,1,none), pt g)"));
    CHECK(v.locally_cb == Tri::no);

    // with the genus threshold lifted off the isolated points the punctures
    // shift between the two flutes
    v = classify(S("surface genus=inf ends=sum(ord(1,1,ge(1)), ord(1,1,none), pt g)"));
    CHECK(v.locally_cb == Tri::yes);
    CHECK(v.cb_generated == Tri::yes);
}

TEST_CASE("limit type decisions") {
    CHECK(has_limit_type(S("surface genus=0 ends=ord(w,2)")) == Tri::yes);
    CHECK(has_limit_type(S("surface genus=0 ends=ord(w+1,2)")) == Tri::no);
    CHECK(has_limit_type(S("surface genus=0 ends=ord(w,1)")) == Tri::no);
    CHECK(has_limit_type(S("surface genus=0 ends=ord(w^2,3)")) == Tri::yes);
    CHECK(has_limit_type(S("surface genus=0 ends=ord(2,2)")) == Tri::no);
    // two-point once-fans climb on both sides
    CHECK(has_limit_type(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two)")) ==
          Tri::yes);
    // repeated fans place every level at every scale: no confinement
    CHECK(has_limit_type(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)")) ==
          Tri::no);
    // distinct genus profiles keep the families apart
    CHECK(has_limit_type(S("surface genus=inf ends=sum(ord(w,1,all), ord(w,1))")) ==
          Tri::no);
    // rank families wrapped in infinite copy constructors recur at every
    // scale, so they are not confined and witness no limit type
    CHECK(has_limit_type(S("surface genus=inf ends=sum(omega(sum(ord(w,2), cantor), g), "
                           "omega(sum(ord(w,2), cantor), g))")) == Tri::no);
    CHECK(has_limit_type(
              S("surface genus=inf ends=sum(omega(fan(iter(cacc(pt)), one), g), "
                "omega(fan(iter(cacc(pt)), one), g))")) == Tri::no);
    Verdict deep = classify(S("surface genus=inf ends=sum(omega(sum(ord(w,2), cantor), "
                              "g), omega(sum(ord(w,2), cantor), g))"));
    CHECK(deep.cb_generated == Tri::yes);
}

TEST_CASE("infinite rank decisions") {
    CHECK(has_infinite_rank(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)")) ==
          Tri::yes);
    CHECK(has_infinite_rank(S("surface genus=inf ends=sum(pt g, pt g)")) == Tri::no);
    CHECK(has_infinite_rank(S("surface genus=0 ends=ord(w^2,2)")) == Tri::no);
    CHECK(has_infinite_rank(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two)")) ==
          Tri::no);
    CHECK(has_infinite_rank(S("surface genus=inf ends=fan(iter(cacc(pt,g)), one, rep)")) ==
          Tri::no);
    // two one-sided repeated fans over the same schema work like a two-sided one
    CHECK(has_infinite_rank(
              S("surface genus=inf ends=sum(fan(iter(cacc(pt,g)), one, rep), "
                "fan(iter(cacc(pt,g)), one, rep))")) == Tri::yes);
}

TEST_CASE("nondisplaceable certificates") {
    auto c = nondisplaceable_certificate(S("surface genus=1 ends=ord(w,1)"));
    REQUIRE(c);
    CHECK(obstruction_kind(*c) == "FiniteNonzeroGenus");

    c = nondisplaceable_certificate(S("surface genus=0 ends=ord(1,3)"));
    REQUIRE(c);
    CHECK(obstruction_kind(*c) == "InvariantFiniteEndSet");

    c = nondisplaceable_certificate(S("surface genus=inf ends=sum(cantor, cantor g)"));
    REQUIRE(c);
    CHECK(obstruction_kind(*c) == "PantsXY");

    CHECK_FALSE(nondisplaceable_certificate(S("surface genus=inf ends=pt g")));
    CHECK_FALSE(nondisplaceable_certificate(S("surface genus=0 ends=cantor")));
    CHECK_FALSE(nondisplaceable_certificate(
        S("surface genus=inf ends=line(sum(cantor g, cantor), g, g)")));
}

TEST_CASE("classification pipeline verdicts") {
    Verdict v = classify(S("surface genus=0 ends=ord(1,1)"));
    CHECK(v.globally_cb == Tri::yes);

    v = classify(S("surface genus=0 ends=ord(1,2)"));
    CHECK(v.locally_cb == Tri::yes);
    CHECK(v.cb_generated == Tri::yes);
    CHECK(v.globally_cb == Tri::no);

    v = classify(S("surface genus=0 ends=ord(w,2)"));
    CHECK(v.locally_cb == Tri::yes);
    CHECK(v.cb_generated == Tri::no);
    CHECK(v.globally_cb == Tri::no);
    CHECK(has_cert(v, "LimitType"));

    v = classify(S("surface genus=inf ends=pt g"));
    CHECK(v.globally_cb == Tri::yes);

    v = classify(S("surface genus=2 ends=omega(sum(cantor, cacc(pt)))"));
    CHECK(v.locally_cb == Tri::yes);
    CHECK(v.globally_cb == Tri::no);
    REQUIRE(v.witness);
    CHECK(v.witness->k_genus == 2);
    CHECK(v.witness->k_boundary_count == 2);
    CHECK(has_cert(v, "FiniteNonzeroGenus"));

    CHECK_THROWS_AS(classify(S("surface genus=0 ends=sum(pt, pt)")), ScopeError);
}

TEST_CASE("verdict monotonicity and certificate consistency") {
    for (const char* s : {
             "surface genus=0 ends=ord(w,1)",
             "surface genus=0 ends=ord(w,2)",
             "surface genus=1 ends=ord(1,1)",
             "surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)",
             "surface genus=inf ends=sum(cantor, cantor g)",
             "surface genus=0 ends=sum(cantor, pt)",
         }) {
        Verdict v = classify(S(s));
        auto rank = [](Tri t) { return t == Tri::yes ? 2 : t == Tri::unknown ? 1 : 0; };
        CHECK(rank(v.globally_cb) <= rank(v.cb_generated));
        CHECK(rank(v.cb_generated) <= rank(v.locally_cb));
        // no "yes" with a contradicting certificate
        if (v.globally_cb == Tri::yes) CHECK(v.certificates.empty());
        for (const Obstruction& o : v.certificates) {
            std::string kind = obstruction_kind(o);
            if (kind == "LimitType" || kind == "InfiniteRank")
                CHECK(v.cb_generated == Tri::no);
            else if (kind == "NoStabilizingComplement")
                CHECK(v.locally_cb == Tri::no);
            else
                CHECK(v.globally_cb == Tri::no);
        }
    }
}

TEST_CASE("certificates re-validate independently") {
    for (const char* s : {
             "surface genus=5 ends=cantor",
             "surface genus=0 ends=ord(1,3)",
             "surface genus=inf ends=sum(cantor, cantor g)",
             "surface genus=0 ends=ord(w,2)",
             "surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)",
             "surface genus=0 ends=sum(cantor, pt)",
         }) {
        Surface surf = S(s);
        Verdict v = classify(surf);
        REQUIRE_FALSE(v.certificates.empty());
        for (const Obstruction& o : v.certificates) CHECK(check_obstruction(surf, o));
    }
}

TEST_CASE("the infinite-rank certificate carries three homomorphism descriptors") {
    Verdict v = classify(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)"));
    REQUIRE(has_cert(v, "InfiniteRank"));
    for (const Obstruction& o : v.certificates) {
        if (obstruction_kind(o) != "InfiniteRank") continue;
        const auto& c = std::get<InfiniteRank>(o);
        CHECK(c.z_germs.size() >= 3);
        CHECK(c.homomorphisms.size() >= 3);
        // descriptors are pairwise distinct
        for (std::size_t i = 0; i < c.z_germs.size(); ++i)
            for (std::size_t j = i + 1; j < c.z_germs.size(); ++j)
                CHECK_FALSE(c.z_germs[i] == c.z_germs[j]);
    }
}

TEST_CASE("witness invariants: A pieces self-similar, P pieces embed") {
    for (const char* s : {
             "surface genus=0 ends=ord(w,2)",
             "surface genus=0 ends=ord(1,3)",
             "surface genus=inf ends=sum(pt g, pt g)",
             "surface genus=2 ends=omega(sum(cantor, cacc(pt)))",
             "surface genus=inf ends=line(sum(cantor, cantor), g, !g)",
             "surface genus=1 ends=ord(1,2)",
         }) {
        Verdict v = classify(S(s));
        REQUIRE(v.locally_cb == Tri::yes);
        REQUIRE(v.witness);
        for (const Term& a : v.witness->a_pieces)
            CHECK(is_self_similar(a) == Tri::yes);
        for (const auto& p : v.witness->p_pieces) {
            REQUIRE(p.a_index < v.witness->a_pieces.size());
            CHECK(embeds(normalize(p.piece),
                         normalize(v.witness->a_pieces[p.a_index])));
        }
        CHECK(v.witness->k_boundary_count ==
              std::max<std::uint64_t>(1, v.witness->a_pieces.size() +
                                             v.witness->p_pieces.size()));
    }
}

TEST_CASE("explanation traces carry stable rule ids") {
    auto rules = [](const Verdict& v) {
        std::vector<std::string> out;
        for (const ExplanationStep& e : v.explanation) out.push_back(e.rule);
        return out;
    };
    auto has_rule = [&](const Verdict& v, const std::string& r) {
        auto rs = rules(v);
        return std::find(rs.begin(), rs.end(), r) != rs.end();
    };
    CHECK(has_rule(classify(S("surface genus=0 ends=ord(1,1)")), "self-similar-bounded"));
    CHECK(has_rule(classify(S("surface genus=inf ends=line(sum(cantor g, cantor), g, g)")),
                   "telescoping-bounded"));
    CHECK(has_rule(classify(S("surface genus=0 ends=ord(w,2)")), "limit-type"));
    CHECK(has_rule(classify(S("surface genus=inf ends=fan(iter(cacc(pt,g)), two, rep)")),
                   "infinite-rank"));
    CHECK(has_rule(classify(S("surface genus=3 ends=cantor")),
                   "nondisplaceable-subsurface"));
    CHECK(has_rule(classify(S("surface genus=1 ends=ord(1,1)")), "stabilization-failure"));
    CHECK(has_rule(classify(S("surface genus=0 ends=ord(1,2)")), "tame-cb-generated"));
    CHECK(has_rule(classify(S("surface genus=0 ends=ord(1,2)")), "locally-cb-witness"));
    CHECK(has_rule(classify(S("surface genus=inf ends=cacc(pt g)")),
                   "cacc-attachment-axiom"));
}

TEST_CASE("honest unknowns carry a reason and no contradicting certificate") {
    Verdict v =
        classify(S("surface genus=inf ends=sum(omega(cacc(pt), g), omega(cacc(pt), g))"));
    CHECK(v.globally_cb == Tri::unknown);
    CHECK_FALSE(v.unknown_reason.empty());
    CHECK(v.certificates.empty());
}
