#pragma once

#include "endcb/normalize.hpp"
#include "endcb/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endcb {

// Cardinality of an equivalence class of ends.
struct Cardinality {
    enum class Kind : std::uint8_t { finite, countably_infinite, cantor };
    Kind kind = Kind::finite;
    std::uint64_t count = 0; // for finite

    static Cardinality fin(std::uint64_t k) { return {Kind::finite, k}; }
    static Cardinality inf() { return {Kind::countably_infinite, 0}; }
    static Cardinality cantor_set() { return {Kind::cantor, 0}; }
    bool is_infinite() const { return kind != Kind::finite; }
    bool operator==(const Cardinality&) const = default;
    std::string str() const;
};

// An equivalence class of ends under mutual domination, keyed by its
// canonical local-neighborhood germ term.
struct EndClass {
    Term germ;
    Cardinality card;
    std::vector<std::string> loci; // node paths in the source term
    // chunk id -> cardinality of the class inside that chunk (chunks are the
    // complementary regions a witness surface would cut: one per maximal end
    // cluster at the top level)
    std::vector<std::pair<std::string, Cardinality>> chunk_cards;

    Cardinality card_in(const std::string& chunk) const;
    Cardinality card_outside(const std::string& chunk) const;
};

// A symbolic family of pairwise distinct classes indexed by rank or by
// schema level; exposed as one poset entry.
struct ClassFamily {
    enum class Kind : std::uint8_t { ord_ranks, fan_pieces };
    Kind kind = Kind::ord_ranks;

    // ord_ranks: germs ord(b, 1, profile.slice(b)) for lo <= b < sup
    Ordinal lo, sup;
    GenusProfile profile;

    // fan_pieces: germs = one-sided tails of X(k) = omega^k(base), k >= 1
    Term base;
    Flag iflag = Flag::planar;
    FanMult mult = FanMult::once;

    // Members lie in arbitrarily small neighborhoods of the chunk's top end:
    // holds for ord chunks with limit exponent and for once-fans.
    bool climbing_confined = false;

    std::vector<std::string> loci;
    std::vector<std::string> chunks;

    std::string str() const;
    bool same_family(const ClassFamily& o) const;
};

struct ClassPoset {
    Term source; // normalized term the poset was computed from
    std::vector<EndClass> classes;
    std::vector<ClassFamily> families;
    // leq[a][b]: class a is dominated by class b. Reflexive, transitive.
    std::vector<std::vector<bool>> leq_matrix;
    // accumulates[a][b]: points of class a accumulate at points of class b.
    std::vector<std::vector<bool>> acc_matrix;

    bool leq(std::size_t a, std::size_t b) const { return leq_matrix[a][b]; }
    bool accumulates(std::size_t a, std::size_t b) const { return acc_matrix[a][b]; }
    // Classes with no strictly greater class (checked against symbolic
    // families as well).
    std::vector<std::size_t> maximal() const;
    // Immediate predecessors of class m: maximal among classes strictly
    // below it. Families cofinal below m contribute none.
    std::vector<std::size_t> immediate_predecessors(std::size_t m) const;
    // True if some family member lies strictly between c's germ and the top
    // of the family's chunk, or strictly above c.
    bool family_member_above(std::size_t c) const;
};

// Computes the classes of a term (the input is normalized internally).
ClassPoset classes(const Term& t);

// Clopen-subspace embedding: some copy of the space denoted by `germ` sits
// as a clopen subset of the space denoted by `host`. Both normalized.
bool embeds(const Term& germ, const Term& host);

// A copy of `germ` appears in arbitrarily small neighborhoods of points with
// germ `host_germ`. For distinct classes a ≺ b iff interior_embeds(a, b);
// this is also the accumulation relation.
bool interior_embeds(const Term& germ, const Term& host_germ);

// Every class (and family) of `y` is dominated by some class of `s`, so y is
// absorbable into stable neighborhoods inside s. Inputs normalized.
bool all_classes_dominated(const Term& y, const Term& s);

// Some member of the family lies strictly above the germ g.
bool family_dominates(const ClassFamily& f, const Term& g);

// Every member of the family is dominated by the class with germ m.
bool family_all_dominated(const ClassFamily& f, const Term& m);

// The canonical stable germ of a class; nullopt when no stable neighborhood
// is certified.
std::optional<Term> stable_neighborhood(const EndClass& c);

// Every maximal class and every immediate predecessor of one has a stable
// neighborhood.
Tri is_tame(const Term& t);

// DOT digraph of the class poset: classes and families as nodes, covering
// relation as edges.
std::string poset_dot(const ClassPoset& p);

} // namespace endcb
