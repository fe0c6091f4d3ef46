#pragma once

#include "endcb/term.hpp"

#include <optional>
#include <vector>

namespace endcb {

// Genus placement of a countable pair, as a Cantor-Bendixson rank threshold
// when one exists. threshold == nullopt means no genus ends; threshold == 0
// means all ends are genus; otherwise E^G is exactly the set of points of
// rank >= threshold. `mixed` marks pairs whose genus set is not a rank
// threshold (those never collapse to an ord term).
struct GenusProfile {
    bool mixed = false;
    std::optional<Ordinal> threshold;

    static GenusProfile none() { return {}; }
    static GenusProfile all() { return {false, Ordinal::zero()}; }
    static GenusProfile at(Ordinal t) { return {false, std::move(t)}; }
    static GenusProfile make_mixed() { return {true, std::nullopt}; }

    // Normalized against the space's maximal rank: thresholds above alpha
    // have empty genus set.
    static GenusProfile from_spec(const GenusSpec& g, const Ordinal& alpha);
    // Requires !mixed.
    GenusSpec to_spec() const;
    // Profile of the subspace of ranks <= beta.
    GenusProfile slice(const Ordinal& beta) const;
    Flag flag_at(const Ordinal& rank) const;

    bool operator==(const GenusProfile&) const = default;
};

// Mazurkiewicz-Sierpinski invariant of a countable pair: the unique (alpha, n)
// with underlying space homeomorphic to w^alpha * n + 1, plus genus profile.
struct MsInvariant {
    Ordinal alpha;
    std::uint64_t n = 1;
    GenusProfile profile;
};

// nullopt iff the term contains cantor or cacc.
std::optional<MsInvariant> ms_invariant(const Term& t);

// Canonical form. Idempotent; the result denotes a space pair-homeomorphic
// to the input. Countable subterms with clean genus profiles collapse to
// ord(alpha, n, g); sums are flattened, absorbed where a rewrite lemma
// applies, and sorted.
Term normalize(const Term& t);

// Symbolic Cantor-Bendixson derivative: the term denoting the derived set,
// or nullopt for the empty space.
std::optional<Term> derive(const Term& t);

// Flags and counts of the isolated points of t.
FlagCounts isolated_counts(const Term& t);

// Iterated symbolic derivative fingerprint (cross-checked against the
// truncation oracle on small countable grids).
std::vector<FlagCounts> symbolic_fingerprint(const Term& t, std::uint64_t depth = 8);

// Sound three-valued pair-homeomorphism test: yes on equal normal forms,
// no when a computed invariant differs, unknown otherwise.
Tri is_homeomorphic(const Term& a, const Term& b, std::uint64_t depth = 8);

} // namespace endcb
