#include "endcb/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace endcb {

FiniteSpace finite_space_of(const Term& t) {
    if (!is_finite_space(t)) throw std::domain_error("term does not denote a finite space");
    FiniteSpace f;
    switch (t.kind) {
        case Term::Kind::pt:
            f.points.push_back(t.flag);
            break;
        case Term::Kind::ord:
            for (std::uint64_t i = 0; i < t.n; ++i)
                f.points.push_back(t.gspec.flag_at(Ordinal::zero()));
            break;
        case Term::Kind::sum:
            for (const Term& c : t.children) {
                FiniteSpace sub = finite_space_of(c);
                f.points.insert(f.points.end(), sub.points.begin(), sub.points.end());
            }
            break;
        default:
            throw std::domain_error("term does not denote a finite space");
    }
    return f;
}

namespace {

std::pair<std::size_t, std::size_t> flag_counts(const FiniteSpace& f) {
    std::size_t planar = 0, genus = 0;
    for (Flag fl : f.points) (is_genus(fl) ? genus : planar)++;
    return {planar, genus};
}

} // namespace

bool finite_homeo(const FiniteSpace& a, const FiniteSpace& b) {
    if (a.points.empty() || b.points.empty())
        throw std::domain_error("finite spaces must be nonempty");
    return flag_counts(a) == flag_counts(b);
}

bool self_similar_bruteforce(const FiniteSpace& f, std::size_t size_cap) {
    std::size_t n = f.points.size();
    if (n == 0) throw std::domain_error("finite spaces must be nonempty");
    if (n > size_cap) throw std::domain_error("finite space exceeds brute-force size cap");
    if (n == 1) return true;
    auto [wp, wg] = flag_counts(f);
    // Every 2-part decomposition with both parts nonempty; a part contains a
    // flag-isomorphic copy of the whole iff its flag counts dominate.
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        bool part_works = false;
        for (int side = 0; side < 2 && !part_works; ++side) {
            std::size_t planar = 0, genus = 0;
            for (std::size_t i = 0; i < n; ++i) {
                bool in_part = ((mask >> i) & 1) == static_cast<std::size_t>(side);
                if (in_part) (is_genus(f.points[i]) ? genus : planar)++;
            }
            part_works = planar >= wp && genus >= wg;
        }
        if (!part_works) return false;
    }
    return true;
}

namespace {

TruncForest truncate_rec(const Term& t, std::uint64_t depth, bool replicated);

TruncForest copies(const Term& child, std::uint64_t depth, std::uint64_t count) {
    TruncForest forest;
    for (std::uint64_t i = 0; i < count; ++i) {
        TruncForest copy = truncate_rec(child, depth, true);
        forest.insert(forest.end(), copy.begin(), copy.end());
    }
    return forest;
}

// Truncation of the ordinal space w^a*n + 1.
TruncForest truncate_ord(const Ordinal& a, std::uint64_t n, const GenusSpec& g,
                         std::uint64_t depth, bool replicated) {
    TruncForest forest;
    if (a.is_zero()) {
        for (std::uint64_t i = 0; i < n; ++i)
            forest.push_back({g.flag_at(Ordinal::zero()), false, replicated, {}});
        return forest;
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        TruncNode top;
        top.flag = g.flag_at(a);
        top.replicated = replicated;
        // depth exhausted: the node stands for unresolved deeper structure
        if (depth == 0) top.cut = true;
        if (depth > 0) {
            if (a.is_successor()) {
                Ordinal below = a.predecessor();
                for (std::uint64_t k = 0; k < depth; ++k) {
                    TruncForest sub = truncate_ord(below, 1, g, depth - 1, true);
                    top.children.insert(top.children.end(), sub.begin(), sub.end());
                }
            } else {
                // limit: pieces of cofinally increasing rank
                for (std::uint64_t k = 1; k <= depth; ++k) {
                    TruncForest sub = truncate_ord(a.fundamental(k), 1, g, depth - 1, true);
                    top.children.insert(top.children.end(), sub.begin(), sub.end());
                }
            }
        }
        forest.push_back(std::move(top));
    }
    return forest;
}

Term omega_iterate(const Term& base, std::uint64_t k, Flag iflag) {
    Term t = base;
    for (std::uint64_t i = 0; i < k; ++i) t = omega_term(std::move(t), iflag);
    return t;
}

TruncForest truncate_rec(const Term& t, std::uint64_t depth, bool replicated) {
    switch (t.kind) {
        case Term::Kind::pt:
            return {TruncNode{t.flag, false, replicated, {}}};
        case Term::Kind::sum: {
            TruncForest forest;
            for (const Term& c : t.children) {
                TruncForest sub = truncate_rec(c, depth, replicated);
                forest.insert(forest.end(), sub.begin(), sub.end());
            }
            return forest;
        }
        case Term::Kind::omega: {
            TruncNode limit{t.flag, depth == 0, replicated, {}};
            if (depth > 0) limit.children = copies(t.children[0], depth - 1, depth);
            return {std::move(limit)};
        }
        case Term::Kind::line: {
            TruncNode x1{t.flag, depth == 0, replicated, {}};
            TruncNode x2{t.flag2, depth == 0, replicated, {}};
            if (depth > 0) {
                x1.children = copies(t.children[0], depth - 1, depth);
                x2.children = copies(t.children[0], depth - 1, depth);
            }
            return {std::move(x1), std::move(x2)};
        }
        case Term::Kind::cantor:
            return {TruncNode{t.flag, true, replicated, {}}};
        case Term::Kind::cacc: {
            TruncNode base{t.flag, true, replicated, {}};
            if (depth > 0) base.children = copies(t.children[0], depth - 1, depth);
            return {std::move(base)};
        }
        case Term::Kind::ord:
            return truncate_ord(t.alpha, t.n, t.gspec, depth, replicated);
        case Term::Kind::fan: {
            // X(k) = omega^k(base); once: alternate sides, repeated: depth
            // copies of each level on every side.
            TruncNode x1{t.flag, depth == 0, replicated, {}};
            TruncNode x2{t.flag2, depth == 0, replicated, {}};
            for (std::uint64_t k = 1; k <= depth; ++k) {
                Term piece = omega_iterate(t.children[0], k, t.iflag);
                std::uint64_t reps = t.mult == FanMult::repeated ? depth : 1;
                for (std::uint64_t r = 0; r < reps; ++r) {
                    TruncForest sub = truncate_rec(piece, depth > 0 ? depth - 1 : 0, true);
                    if (t.n == 1) {
                        x1.children.insert(x1.children.end(), sub.begin(), sub.end());
                    } else if (t.mult == FanMult::repeated) {
                        TruncForest sub2 = truncate_rec(piece, depth - 1, true);
                        x1.children.insert(x1.children.end(), sub.begin(), sub.end());
                        x2.children.insert(x2.children.end(), sub2.begin(), sub2.end());
                    } else {
                        auto& side = (k % 2 == 1) ? x1 : x2;
                        side.children.insert(side.children.end(), sub.begin(), sub.end());
                    }
                }
            }
            if (t.n == 1) return {std::move(x1)};
            return {std::move(x1), std::move(x2)};
        }
    }
    return {};
}

void add_count(Count& c, bool replicated) {
    if (c.infinite) return;
    if (replicated)
        c = Count::inf();
    else
        c.value += 1;
}

// Removes the points isolated at the start of the step (childless, not cut),
// recording their flags. Returns true if the node itself was removed.
bool derivative_step_helper(TruncNode& node, FlagCounts& removed) {
    if (node.children.empty()) {
        if (node.cut) return false;
        add_count(is_genus(node.flag) ? removed.genus : removed.planar, node.replicated);
        return true;
    }
    std::vector<TruncNode> kept;
    for (TruncNode& child : node.children)
        if (!derivative_step_helper(child, removed)) kept.push_back(std::move(child));
    node.children = std::move(kept);
    return false;
}

} // namespace

TruncForest truncate(const Term& t, std::uint64_t depth) {
    return truncate_rec(t, depth, false);
}

std::vector<FlagCounts> derivative_fingerprint(const Term& t, std::uint64_t depth) {
    TruncForest forest = truncate(t, depth);
    std::vector<FlagCounts> fp;
    for (std::uint64_t step = 0; step < depth; ++step) {
        FlagCounts removed;
        TruncForest kept;
        for (TruncNode& node : forest)
            if (!derivative_step_helper(node, removed)) kept.push_back(std::move(node));
        forest = std::move(kept);
        fp.push_back(removed);
        if (removed.empty()) break;
    }
    return fp;
}

std::string fingerprint_str(const std::vector<FlagCounts>& fp) {
    auto count_str = [](const Count& c) {
        return c.infinite ? std::string("w") : std::to_string(c.value);
    };
    std::string out = "[";
    for (std::size_t i = 0; i < fp.size(); ++i) {
        if (i) out += "; ";
        out += "planar:" + count_str(fp[i].planar) + " genus:" + count_str(fp[i].genus);
    }
    return out + "]";
}

} // namespace endcb
