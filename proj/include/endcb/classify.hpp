#pragma once

#include "endcb/order.hpp"
#include "endcb/term.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace endcb {

// Witness data for a locally CB mapping class group: the finite-type surface
// K and the induced partition of the end space into self-similar pieces A
// and absorbable pieces P.
struct KWitness {
    std::uint64_t k_genus = 0;
    std::uint64_t k_boundary_count = 1;
    std::uint64_t k_punctures = 0;
    std::vector<Term> a_pieces;
    struct PPiece {
        Term piece;
        std::size_t a_index = 0; // A piece the P piece absorbs into
    };
    std::vector<PPiece> p_pieces;
};

// Obstruction certificates. Each carries enough data for an independent
// re-check against the input surface.
struct FiniteNonzeroGenus {
    std::uint64_t genus = 1;
};
struct InvariantFiniteEndSet {
    std::uint64_t size = 0;
    std::vector<Term> class_germs;
};
struct PantsXY {
    Term x_germ; // Cantor-cardinality invariant class
    Term y_germ; // disjoint closed invariant class
};
struct LimitType {
    std::string invariant_set; // description of the invariant set X
    std::string family;        // the cofinal family of pairwise inequivalent types
};
struct InfiniteRank {
    std::string invariant_set;
    std::vector<Term> z_germs;              // stable-neighborhood classes z_n
    std::vector<std::string> homomorphisms; // integer-valued shift-counting maps
};
struct NoStabilizingComplement {
    Term maximal_germ;
    std::vector<std::string> growing_types; // classes no complement can realize
};

using Obstruction = std::variant<FiniteNonzeroGenus, InvariantFiniteEndSet, PantsXY,
                                 LimitType, InfiniteRank, NoStabilizingComplement>;

std::string obstruction_kind(const Obstruction& o);
std::string obstruction_str(const Obstruction& o);

struct ExplanationStep {
    std::string rule;      // stable rule id
    std::string statement; // the classification fact the rule applies
    std::string detail;
};

struct Verdict {
    Tri locally_cb = Tri::unknown;
    Tri cb_generated = Tri::unknown;
    Tri globally_cb = Tri::unknown;
    std::vector<ExplanationStep> explanation;
    std::optional<KWitness> witness;
    std::vector<Obstruction> certificates;
    std::string unknown_reason; // first blocking sub-question, when any
};

// Thrown for finite-type input.
class ScopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every finite clopen partition has a part containing a clopen copy of the
// whole pair.
Tri is_self_similar(const Term& t, std::uint64_t depth = 8);

// Two distinguished ends whose neighborhoods expand arbitrarily and relative
// to each other; decidable for line-shaped end spaces, refutable elsewhere.
Tri is_telescoping(const Surface& s);

// A cofinal family of pairwise inequivalent end types confined to shrinking
// neighborhoods of an invariant maximal set, represented on both sides.
Tri has_limit_type(const Surface& s);

// Infinitely many independent integer-valued shift-counting homomorphisms,
// realized by repeated two-sided fans over uncountable schema bases.
Tri has_infinite_rank(const Surface& s);

// A certificate that some finite-type subsurface meets all its images.
std::optional<Obstruction> nondisplaceable_certificate(const Surface& s);

// Full pipeline: local coarse boundedness, CB generation, global coarse
// boundedness, with witnesses, certificates and an explanation trace.
Verdict classify(const Surface& s, std::uint64_t depth = 8);

// Independent re-validation of a certificate against the input surface,
// re-deriving the defining sets rather than trusting the classifier.
bool check_obstruction(const Surface& s, const Obstruction& o);

} // namespace endcb
