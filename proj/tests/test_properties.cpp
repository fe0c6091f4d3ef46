#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endcb/classify.hpp"
#include "endcb/normalize.hpp"
#include "endcb/oracle.hpp"
#include "endcb/order.hpp"
#include "endcb/parser.hpp"

#include "generators.hpp"

using namespace endcb;
using testgen::TermGen;

namespace {
constexpr int kCases = 500;
}

TEST_CASE("property: generated terms are valid") {
    TermGen gen(1);
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term();
        CHECK(validate(t).empty());
    }
}

TEST_CASE("property: parser round trip") {
    TermGen gen(2);
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term();
        CHECK(parse_term(print(t)) == t);
    }
}

TEST_CASE("property: normalize is idempotent") {
    TermGen gen(3);
    for (int i = 0; i < kCases; ++i) {
        Term n = normalize(gen.term());
        CHECK(normalize(n) == n);
    }
}

TEST_CASE("property: normalize preserves validity and key invariants") {
    TermGen gen(4);
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term();
        Term n = normalize(t);
        CHECK(validate(n).empty());
        CHECK(has_genus_end(t) == has_genus_end(n));
        CHECK(is_countable(t) == is_countable(n));
        if (is_countable(t)) {
            auto mt = ms_invariant(t), mn = ms_invariant(n);
            CHECK(mt->alpha == mn->alpha);
            CHECK(mt->n == mn->n);
            CHECK(mt->profile == mn->profile);
        }
    }
}

TEST_CASE("property: normalize preserves symbolic derivative fingerprints") {
    TermGen gen(5);
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term(3);
        Term n = normalize(t);
        auto ft = symbolic_fingerprint(t, 6);
        auto fn = symbolic_fingerprint(n, 6);
        CHECK(ft == fn);
    }
}

TEST_CASE("property: leq is reflexive and transitive, acc implies leq") {
    TermGen gen(6);
    for (int i = 0; i < kCases; ++i) {
        ClassPoset p = classes(gen.term(2));
        std::size_t k = p.classes.size();
        for (std::size_t a = 0; a < k; ++a) {
            CHECK(p.leq(a, a));
            for (std::size_t b = 0; b < k; ++b) {
                if (p.accumulates(a, b)) CHECK(p.leq(a, b));
                for (std::size_t c = 0; c < k; ++c)
                    if (p.leq(a, b) && p.leq(b, c)) CHECK(p.leq(a, c));
            }
        }
    }
}

TEST_CASE("property: maximal classes exist and are finite or Cantor") {
    TermGen gen(7);
    for (int i = 0; i < kCases; ++i) {
        ClassPoset p = classes(gen.term(2));
        std::vector<std::size_t> max = p.maximal();
        CHECK_FALSE(max.empty());
        for (std::size_t m : max)
            CHECK(p.classes[m].card.kind != Cardinality::Kind::countably_infinite);
        // every class sits below some maximal class
        for (std::size_t c = 0; c < p.classes.size(); ++c) {
            bool bounded = false;
            for (std::size_t m : max) bounded = bounded || p.leq(c, m);
            // classes below a cofinal family are bounded by the family's top
            if (!bounded) bounded = p.family_member_above(c);
            CHECK(bounded);
        }
    }
}

TEST_CASE("property: countable leq agrees with ordinal rank order") {
    TermGen gen(8);
    int done = 0;
    for (int i = 0; done < kCases; ++i) {
        REQUIRE(i < kCases * 20);
        Term t = gen.countable_term(2);
        auto m = ms_invariant(t);
        if (m->profile.mixed) continue; // genus-uniform case only
        ++done;
        ClassPoset p = classes(t);
        for (std::size_t a = 0; a < p.classes.size(); ++a) {
            for (std::size_t b = 0; b < p.classes.size(); ++b) {
                if (a == b) continue;
                const Term& ga = p.classes[a].germ;
                const Term& gb = p.classes[b].germ;
                REQUIRE(ga.kind == Term::Kind::ord);
                REQUIRE(gb.kind == Term::Kind::ord);
                bool strictly_below = p.leq(a, b) && !p.leq(b, a);
                CHECK(strictly_below == (ga.alpha < gb.alpha));
            }
        }
    }
}

TEST_CASE("property: verdict monotonicity on random surfaces") {
    TermGen gen(9);
    auto rank = [](Tri t) { return t == Tri::yes ? 2 : t == Tri::unknown ? 1 : 0; };
    int done = 0;
    for (int i = 0; done < kCases; ++i) {
        REQUIRE(i < kCases * 20);
        Term t = gen.term(2);
        Surface s{has_genus_end(t) ? std::optional<std::uint64_t>{}
                                   : std::optional<std::uint64_t>{0},
                  t};
        if (!is_infinite_type(s)) continue;
        // sprinkle finite positive genus over planar end spaces
        if (!has_genus_end(t) && gen.pick(3) == 0) s.genus = 1 + gen.pick(4);
        ++done;
        Verdict v = classify(s);
        CHECK(rank(v.globally_cb) <= rank(v.cb_generated));
        CHECK(rank(v.cb_generated) <= rank(v.locally_cb));
        if (v.globally_cb == Tri::yes) CHECK(v.certificates.empty());
        for (const Obstruction& o : v.certificates) CHECK(check_obstruction(s, o));
        // unknown verdicts always carry a reason
        if (v.locally_cb == Tri::unknown || v.cb_generated == Tri::unknown ||
            v.globally_cb == Tri::unknown)
            CHECK_FALSE(v.unknown_reason.empty());
    }
}

TEST_CASE("property: oracle agreement on finite spaces (exhaustive to 6 points)") {
    // every flag multiset with at most 6 points
    for (std::size_t planar = 0; planar <= 6; ++planar) {
        for (std::size_t genus = 0; planar + genus <= 6; ++genus) {
            if (planar + genus == 0) continue;
            std::vector<Term> pts;
            FiniteSpace f;
            for (std::size_t i = 0; i < planar; ++i) {
                pts.push_back(pt());
                f.points.push_back(Flag::planar);
            }
            for (std::size_t i = 0; i < genus; ++i) {
                pts.push_back(pt(Flag::genus));
                f.points.push_back(Flag::genus);
            }
            Term t = pts.size() == 1 ? pts[0] : sum(pts);
            bool brute = self_similar_bruteforce(f);
            Tri sym = is_self_similar(t);
            REQUIRE(sym != Tri::unknown);
            CHECK((sym == Tri::yes) == brute);
            CHECK(finite_homeo(f, finite_space_of(normalize(t))));
        }
    }
}

namespace {

// A germ is represented in a poset if some class carries it or a symbolic
// family covers it.
bool germ_represented(const ClassPoset& p, const Term& germ) {
    for (const EndClass& c : p.classes)
        if (c.germ == germ) return true;
    for (const ClassFamily& f : p.families) {
        if (f.kind == ClassFamily::Kind::ord_ranks) {
            if (germ.kind != Term::Kind::ord || germ.n != 1) continue;
            if (!(f.lo <= germ.alpha) || !(germ.alpha < f.sup)) continue;
            if (GenusSpec(germ.gspec) == f.profile.slice(germ.alpha).to_spec())
                return true;
        } else {
            // fan pieces: omega towers over the base
            Term piece = f.base;
            for (int k = 1; k <= 8; ++k) {
                piece = omega_term(piece, f.iflag);
                if (germ == piece) return true;
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("property: normalize preserves the germ spectrum of the class poset") {
    TermGen gen(12);
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term(3);
        Term n = normalize(t);
        ClassPoset pt_ = classes(t);
        ClassPoset pn = classes(n);
        for (const EndClass& c : pt_.classes) CHECK(germ_represented(pn, c.germ));
        for (const EndClass& c : pn.classes) CHECK(germ_represented(pt_, c.germ));
    }
}

TEST_CASE("property: is_homeomorphic is symmetric and consistent with equality") {
    TermGen gen(10);
    for (int i = 0; i < kCases; ++i) {
        Term a = gen.term(2);
        Term b = gen.pick(2) == 0 ? gen.term(2) : a;
        Tri ab = is_homeomorphic(a, b);
        Tri ba = is_homeomorphic(b, a);
        CHECK(ab == ba);
        if (a == b) CHECK(ab == Tri::yes);
    }
}

namespace {

// Pair-homeomorphism-preserving mutations.
Term mutate_sound(TermGen& gen, const Term& t) {
    Term u = t;
    switch (gen.pick(6)) {
        case 0: // permute sum children
            if (u.kind == Term::Kind::sum && u.children.size() >= 2)
                std::swap(u.children[0], u.children[gen.pick(u.children.size())]);
            return u;
        case 1: // unfold an ord into blocks or a converging-copy form
            if (u.kind == Term::Kind::ord && !u.alpha.is_zero() && u.n >= 2) {
                Term block = u;
                block.n = 1;
                std::vector<Term> kids(u.n, block);
                return sum(std::move(kids));
            }
            if (u.kind == Term::Kind::ord && u.alpha.is_successor() && u.n == 1 &&
                u.gspec.kind == GenusSpec::Kind::none)
                return omega_term(ord_term(u.alpha.predecessor(), 1, u.gspec));
            return u;
        case 2: // duplicate an absorbable Cantor summand
            if (u.kind == Term::Kind::sum)
                for (const Term& c : u.children)
                    if (c.kind == Term::Kind::cantor) {
                        u.children.push_back(c);
                        return u;
                    }
            return u;
        case 3: // reflect a line or two-sided fan
            if (u.kind == Term::Kind::line ||
                (u.kind == Term::Kind::fan && u.n == 2)) {
                std::swap(u.flag, u.flag2);
                return u;
            }
            return u;
        case 4: // an extra isolated planar point among infinitely many
            if (isolated_planar_count(u) == Count::inf()) return sum({u, pt()});
            return u;
        default: // a limit point over converging cacc pieces is a base point
            if (u.kind == Term::Kind::cacc) return omega_term(u, u.flag);
            return u;
    }
}

} // namespace

TEST_CASE("property: homeomorphism-preserving mutations are never refuted") {
    TermGen gen(13);
    auto rank = [](Tri t) { return t == Tri::yes ? 2 : t == Tri::unknown ? 1 : 0; };
    for (int i = 0; i < kCases; ++i) {
        Term t = gen.term(3);
        Term u = t;
        std::uint64_t steps = 1 + gen.pick(3);
        for (std::uint64_t s = 0; s < steps; ++s) u = mutate_sound(gen, u);
        REQUIRE(validate(u).empty());
        CHECK(is_homeomorphic(t, u) != Tri::no);

        Surface st{has_genus_end(t) ? std::optional<std::uint64_t>{}
                                    : std::optional<std::uint64_t>{0},
                   t};
        Surface su = st;
        su.ends = u;
        if (!is_infinite_type(st) || !is_infinite_type(su)) continue;
        Verdict vt = classify(st);
        Verdict vu = classify(su);
        // verdicts on homeomorphic pairs may differ in precision, never in sign
        auto compatible = [&](Tri a, Tri b) {
            return !(rank(a) == 2 && rank(b) == 0) && !(rank(a) == 0 && rank(b) == 2);
        };
        CHECK(compatible(vt.locally_cb, vu.locally_cb));
        CHECK(compatible(vt.cb_generated, vu.cb_generated));
        CHECK(compatible(vt.globally_cb, vu.globally_cb));
    }
}

TEST_CASE("property: rank bumps are never confirmed homeomorphic") {
    TermGen gen(14);
    for (int i = 0; i < kCases; ++i) {
        Ordinal a = gen.small_ordinal();
        std::uint64_t n = 1 + gen.pick(3);
        GenusSpec g = gen.gspec();
        Term t = ord_term(a, n, g);
        Term bumped = ord_term(a + Ordinal::nat(1), n, g);
        CHECK(is_homeomorphic(t, bumped) == Tri::no);
        CHECK(is_homeomorphic(sum({t, cantor()}), sum({bumped, cantor()})) != Tri::yes);
    }
}

TEST_CASE("property: truncation fingerprints are monotone necessary conditions") {
    TermGen gen(11);
    for (int i = 0; i < 100; ++i) {
        Term t = gen.term(2);
        Term n = normalize(t);
        // where both are countable with small rank, oracle fingerprints agree
        auto m = ms_invariant(t);
        if (m && !m->profile.mixed && m->alpha.is_finite() &&
            m->alpha.finite_value() <= 3) {
            auto ft = derivative_fingerprint(t, 5);
            auto fn = derivative_fingerprint(n, 5);
            CHECK(ft == fn);
        }
    }
}
