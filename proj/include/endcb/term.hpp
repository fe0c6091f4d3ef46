#pragma once

#include "endcb/ordinal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endcb {

// Whether an end is accumulated by genus (a member of E^G).
enum class Flag : std::uint8_t { planar, genus };

inline bool is_genus(Flag f) { return f == Flag::genus; }

// Which points of an ordinal space w^a*n + 1 belong to E^G: none of them,
// all of them, or exactly the points of Cantor-Bendixson rank >= threshold.
// A rank-threshold set is an iterated derived set, hence closed.
struct GenusSpec {
    enum class Kind : std::uint8_t { none, all, at_least };
    Kind kind = Kind::none;
    Ordinal threshold; // meaningful for at_least

    static GenusSpec none() { return {}; }
    static GenusSpec all() { return {Kind::all, {}}; }
    static GenusSpec at_least(Ordinal b) { return {Kind::at_least, std::move(b)}; }

    // Flag carried by a point of the given rank.
    Flag flag_at(const Ordinal& rank) const;
    bool operator==(const GenusSpec&) const = default;
};

enum class FanMult : std::uint8_t {
    once,    // each schema instance X(k) appears exactly once
    repeated // each X(k) appears countably many times
};

// A finite term denoting a pair (E, E^G): a compact, separable, totally
// disconnected space with a closed subset of ends accumulated by genus.
//
//   pt      a single isolated end (flag)
//   sum     finite disjoint union of 2+ terms
//   omega   countably many copies of the child converging to one new
//           limit point (flag)
//   line    integer-indexed copies of the child compactified by two new
//           points x1 (flag) and x2 (flag2)
//   cantor  a Cantor set, every point carrying flag
//   cacc    a Cantor set of points carrying flag, each accumulated by
//           copies of the child attached along a countable dense family.
//           Modeling axiom: the canonical homogeneous attachment (dense
//           family, diameters shrinking locally) is taken to be unique up
//           to pair-homeomorphism; verdicts on cacc terms depend on it and
//           say so in their explanation trace.
//   ord     the ordinal space w^alpha * n + 1 (for alpha = 0: n discrete
//           points) with E^G given by gspec
//   fan     copies of the schema instances X(k) = omega^k(child)
//           accumulating at exactly one or two new points; in the
//           two-point case instances alternate sides
struct Term {
    enum class Kind : std::uint8_t { pt, sum, omega, line, cantor, cacc, ord, fan };

    Kind kind = Kind::pt;
    Flag flag = Flag::planar;  // pt/cantor/cacc flag, omega/line/fan first limit flag
    Flag flag2 = Flag::planar; // line/fan second limit flag
    std::vector<Term> children;
    Ordinal alpha;             // ord exponent
    std::uint64_t n = 1;       // ord coefficient; fan accumulation-point count (1 or 2)
    GenusSpec gspec;           // ord genus placement
    FanMult mult = FanMult::once;
    // Flag on the intermediate limit points of fan schema instances. Fixed
    // to the closedness-forced value at construction; derivative terms keep
    // the flag of the space they came from.
    Flag iflag = Flag::planar;

    bool operator==(const Term&) const = default;
};

Term pt(Flag f = Flag::planar);
Term sum(std::vector<Term> children);
Term omega_term(Term child, std::optional<Flag> limit = std::nullopt);
Term line(Term child, std::optional<Flag> f1 = std::nullopt,
          std::optional<Flag> f2 = std::nullopt);
Term cantor(Flag f = Flag::planar);
Term cacc(Term child, std::optional<Flag> f = std::nullopt);
Term ord_term(Ordinal alpha, std::uint64_t n, GenusSpec g = GenusSpec::none());
Term fan(Term base, int accum_points, std::optional<Flag> f1 = std::nullopt,
         std::optional<Flag> f2 = std::nullopt, FanMult mult = FanMult::once);

// Flag forced on a new limit point of `child` by closedness of E^G when the
// flag is omitted: genus iff the child contains a genus end.
Flag forced_limit_flag(const Term& child);

struct Violation {
    std::string path;    // node path like "/1/0"
    std::string message;
};

// Validity: E^G closedness at omega/line/fan/cacc nodes, sum arity, ord
// coefficient positivity. Empty result means the term is valid.
std::vector<Violation> validate(const Term& t);

bool has_genus_end(const Term& t);
// False iff a cantor or cacc constructor occurs anywhere.
bool is_countable(const Term& t);
// Denoted space is finite (no infinite constructor and no ord with alpha > 0).
bool is_finite_space(const Term& t);
// Number of points of a finite space.
std::uint64_t finite_space_size(const Term& t);

// A possibly-infinite count.
struct Count {
    bool infinite = false;
    std::uint64_t value = 0;

    static Count of(std::uint64_t v) { return {false, v}; }
    static Count inf() { return {true, 0}; }
    bool operator==(const Count&) const = default;
};

Count isolated_planar_count(const Term& t);

// Three-valued answer for semidecidable questions.
enum class Tri : std::uint8_t { yes, no, unknown };

inline const char* tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "unknown";
    }
}

// Flag counts removed at one Cantor-Bendixson derivative step.
struct FlagCounts {
    Count planar;
    Count genus;

    bool empty() const {
        return !planar.infinite && planar.value == 0 && !genus.infinite &&
               genus.value == 0;
    }
    bool operator==(const FlagCounts&) const = default;
};

// Total order on terms used for canonical sorting of sums. Compares
// constructor tag, then structural fields recursively.
std::strong_ordering term_order(const Term& a, const Term& b);

// Genus descriptor plus end term. genus == nullopt means infinite genus.
struct Surface {
    std::optional<std::uint64_t> genus; // nullopt = infinite
    Term ends;

    bool infinite_genus() const { return !genus.has_value(); }
};

// Surface invariants: finite genus iff no genus-flagged end, plus end-term
// validity. Violation paths for surface-level problems use path "surface".
std::vector<Violation> validate(const Surface& s);

// Infinite type: infinite genus or infinitely many ends.
bool is_infinite_type(const Surface& s);

} // namespace endcb
