#pragma once

#include "endcb/term.hpp"

#include <map>
#include <string>
#include <vector>

namespace endcb {

// A finite discrete space: just a multiset of flagged points.
struct FiniteSpace {
    std::vector<Flag> points;
};

FiniteSpace finite_space_of(const Term& t);

// Two finite discrete pairs (E, E^G) are homeomorphic iff the flag
// multisets agree.
bool finite_homeo(const FiniteSpace& a, const FiniteSpace& b);

// Enumerates all decompositions into two nonempty parts and checks whether
// some part contains a flag-isomorphic copy of the whole space. Spaces above
// the size cap are refused.
bool self_similar_bruteforce(const FiniteSpace& f, std::size_t size_cap = 12);

// Finite decorated tree approximating the first `depth` levels of a term's
// copy structure. Each node is a point; its children are points converging
// to it. `cut` marks points standing in for a perfect kernel (never
// isolated); `replicated` marks points whose position repeats infinitely in
// the full space.
struct TruncNode {
    Flag flag = Flag::planar;
    bool cut = false;
    bool replicated = false;
    std::vector<TruncNode> children;
};

using TruncForest = std::vector<TruncNode>;

TruncForest truncate(const Term& t, std::uint64_t depth);

// Iterated Cantor-Bendixson derivative on the truncation: step k removes the
// isolated (non-cut, childless) points and records their flag counts.
std::vector<FlagCounts> derivative_fingerprint(const Term& t, std::uint64_t depth = 8);

std::string fingerprint_str(const std::vector<FlagCounts>& fp);

} // namespace endcb
