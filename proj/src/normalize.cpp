#include "endcb/normalize.hpp"

#include "endcb/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace endcb {

GenusProfile GenusProfile::from_spec(const GenusSpec& g, const Ordinal& alpha) {
    switch (g.kind) {
        case GenusSpec::Kind::none: return none();
        case GenusSpec::Kind::all: return all();
        case GenusSpec::Kind::at_least:
            if (g.threshold > alpha) return none();
            return at(g.threshold);
    }
    return none();
}

GenusSpec GenusProfile::to_spec() const {
    if (mixed) throw std::domain_error("mixed genus profile has no spec form");
    if (!threshold) return GenusSpec::none();
    if (threshold->is_zero()) return GenusSpec::all();
    return GenusSpec::at_least(*threshold);
}

GenusProfile GenusProfile::slice(const Ordinal& beta) const {
    if (mixed) return make_mixed();
    if (!threshold || *threshold > beta) return none();
    return *this;
}

Flag GenusProfile::flag_at(const Ordinal& rank) const {
    if (mixed) throw std::domain_error("mixed genus profile has no rank flags");
    if (threshold && rank >= *threshold) return Flag::genus;
    return Flag::planar;
}

namespace {

// Threshold-profile after one new limit point of rank `new_rank` carrying
// flag `f` is added on top of a space with profile `p`.
GenusProfile limit_profile(const GenusProfile& p, Flag f, const Ordinal& new_rank) {
    if (p.mixed) return GenusProfile::make_mixed();
    if (is_genus(f)) {
        if (!p.threshold) return GenusProfile::at(new_rank);
        return p; // threshold <= child's max rank < new_rank stays valid
    }
    // planar limit over a space with genus ends is not a rank threshold
    if (p.threshold) return GenusProfile::make_mixed();
    return GenusProfile::none();
}

std::optional<MsInvariant> ms_sum(const std::vector<MsInvariant>& parts) {
    Ordinal alpha;
    for (const MsInvariant& m : parts)
        if (m.alpha > alpha) alpha = m.alpha;
    std::uint64_t n = 0;
    for (const MsInvariant& m : parts)
        if (m.alpha == alpha) n += m.n;
    // profile merge: a single global threshold must be consistent with every
    // chunk; all-planar chunks are fine iff they sit entirely below it.
    bool mixed = false;
    std::optional<Ordinal> candidate;
    for (const MsInvariant& m : parts) {
        if (m.profile.mixed) mixed = true;
        if (m.profile.threshold &&
            (!candidate || *m.profile.threshold < *candidate))
            candidate = m.profile.threshold;
    }
    GenusProfile profile;
    if (mixed) {
        profile = GenusProfile::make_mixed();
    } else if (!candidate) {
        profile = GenusProfile::none();
    } else {
        bool ok = true;
        for (const MsInvariant& m : parts) {
            if (m.profile.threshold) {
                if (*m.profile.threshold != *candidate) ok = false;
            } else if (!(m.alpha < *candidate)) {
                ok = false;
            }
        }
        profile = ok ? GenusProfile::at(*candidate) : GenusProfile::make_mixed();
    }
    return MsInvariant{alpha, n, profile};
}

} // namespace

std::optional<MsInvariant> ms_invariant(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return MsInvariant{Ordinal::zero(), 1,
                               is_genus(t.flag) ? GenusProfile::all() : GenusProfile::none()};
        case Term::Kind::cantor:
        case Term::Kind::cacc:
            return std::nullopt;
        case Term::Kind::ord:
            return MsInvariant{t.alpha, t.n, GenusProfile::from_spec(t.gspec, t.alpha)};
        case Term::Kind::sum: {
            std::vector<MsInvariant> parts;
            for (const Term& c : t.children) {
                auto m = ms_invariant(c);
                if (!m) return std::nullopt;
                parts.push_back(std::move(*m));
            }
            return ms_sum(parts);
        }
        case Term::Kind::omega: {
            auto m = ms_invariant(t.children[0]);
            if (!m) return std::nullopt;
            Ordinal rank = m->alpha.successor();
            return MsInvariant{rank, 1, limit_profile(m->profile, t.flag, rank)};
        }
        case Term::Kind::line: {
            auto m = ms_invariant(t.children[0]);
            if (!m) return std::nullopt;
            Ordinal rank = m->alpha.successor();
            GenusProfile p = t.flag == t.flag2
                                 ? limit_profile(m->profile, t.flag, rank)
                                 : GenusProfile::make_mixed();
            return MsInvariant{rank, 2, p};
        }
        case Term::Kind::fan: {
            auto m = ms_invariant(t.children[0]);
            if (!m) return std::nullopt;
            Ordinal rank = m->alpha + Ordinal::omega();
            GenusProfile p;
            if (m->profile.mixed) {
                p = GenusProfile::make_mixed();
            } else if (m->profile.threshold) {
                // genus base forces genus intermediate and accumulation flags
                p = m->profile;
            } else if (t.n == 2 && t.flag != t.flag2) {
                p = GenusProfile::make_mixed();
            } else {
                p = is_genus(t.flag) ? GenusProfile::at(rank) : GenusProfile::none();
            }
            return MsInvariant{rank, t.n, p};
        }
    }
    return std::nullopt;
}

FlagCounts isolated_counts(const Term& t) {
    auto lift = [](const FlagCounts& inner) {
        FlagCounts out;
        if (inner.planar.infinite || inner.planar.value > 0) out.planar = Count::inf();
        if (inner.genus.infinite || inner.genus.value > 0) out.genus = Count::inf();
        return out;
    };
    switch (t.kind) {
        case Term::Kind::pt: {
            FlagCounts out;
            (is_genus(t.flag) ? out.genus : out.planar) = Count::of(1);
            return out;
        }
        case Term::Kind::cantor:
            return {};
        case Term::Kind::sum: {
            FlagCounts out;
            for (const Term& c : t.children) {
                FlagCounts k = isolated_counts(c);
                auto acc = [](Count& into, const Count& from) {
                    if (from.infinite || into.infinite)
                        into = (from.infinite || into.infinite) ? Count::inf()
                                                                : Count::of(into.value);
                    else
                        into.value += from.value;
                };
                acc(out.planar, k.planar);
                acc(out.genus, k.genus);
            }
            return out;
        }
        case Term::Kind::omega:
        case Term::Kind::line:
        case Term::Kind::cacc:
        case Term::Kind::fan:
            return lift(isolated_counts(t.children[0]));
        case Term::Kind::ord: {
            FlagCounts out;
            Flag f0 = t.gspec.flag_at(Ordinal::zero());
            Count c = t.alpha.is_zero() ? Count::of(t.n) : Count::inf();
            (is_genus(f0) ? out.genus : out.planar) = c;
            return out;
        }
    }
    return {};
}

namespace {

GenusSpec shift_spec(const GenusSpec& g) {
    if (g.kind != GenusSpec::Kind::at_least) return g;
    if (g.threshold.is_zero()) return GenusSpec::all();
    if (g.threshold.is_successor()) {
        Ordinal t = g.threshold.predecessor();
        return t.is_zero() ? GenusSpec::all() : GenusSpec::at_least(t);
    }
    return g; // limit threshold is unchanged by one derivative
}

} // namespace

std::optional<Term> derive(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return std::nullopt;
        case Term::Kind::cantor:
            return t;
        case Term::Kind::sum: {
            std::vector<Term> kept;
            for (const Term& c : t.children) {
                auto d = derive(c);
                if (d) kept.push_back(std::move(*d));
            }
            if (kept.empty()) return std::nullopt;
            if (kept.size() == 1) return kept[0];
            return sum(std::move(kept));
        }
        case Term::Kind::omega: {
            auto d = derive(t.children[0]);
            if (!d) return pt(t.flag);
            return omega_term(std::move(*d), t.flag);
        }
        case Term::Kind::line: {
            auto d = derive(t.children[0]);
            if (!d) return sum({pt(t.flag), pt(t.flag2)});
            return line(std::move(*d), t.flag, t.flag2);
        }
        case Term::Kind::cacc: {
            auto d = derive(t.children[0]);
            if (!d) return cantor(t.flag);
            return cacc(std::move(*d), t.flag);
        }
        case Term::Kind::ord: {
            if (t.alpha.is_zero()) return std::nullopt;
            Ordinal a = t.alpha.is_successor() ? t.alpha.predecessor() : t.alpha;
            return ord_term(std::move(a), t.n, shift_spec(t.gspec));
        }
        case Term::Kind::fan: {
            auto d = derive(t.children[0]);
            Term out = t;
            // Exhausted bases leave the towers one level shorter; the extra
            // lowest piece is absorbed (counts are already infinite).
            out.children[0] = d ? std::move(*d) : pt(t.iflag);
            return out;
        }
    }
    return std::nullopt;
}

std::vector<FlagCounts> symbolic_fingerprint(const Term& t, std::uint64_t depth) {
    std::vector<FlagCounts> fp;
    std::optional<Term> cur = t;
    for (std::uint64_t i = 0; i < depth; ++i) {
        if (!cur) {
            fp.push_back({});
            continue;
        }
        fp.push_back(isolated_counts(*cur));
        cur = derive(*cur);
    }
    return fp;
}

namespace {

Term normalize_rec(const Term& t);

// omega/line over an absorbing uncountable child: countably many Cantor
// pieces (or cacc pieces) converging to matching-flag limit points are again
// a single perfect set of the same kind -- the limit point becomes one more
// base point, and shifting copies outward realizes the homeomorphism.
bool limit_absorbs(const Term& child, Flag f) {
    if (child.kind == Term::Kind::cantor && child.flag == f) return true;
    if (child.kind == Term::Kind::cacc && child.flag == f) return true;
    return false;
}

Term make_ord(const MsInvariant& m) {
    return ord_term(m.alpha, m.n, m.profile.to_spec());
}

// Drops sum children whose classes are all dominated by classes of the
// remaining children; repeats to a fixed point. Sound because a dominated
// class accumulates at its dominating class, so a neighborhood of it merges
// into any stable neighborhood there, and the countably many displaced
// copies shift toward the accumulation point.
void absorb_children(std::vector<Term>& children) {
    bool changed = true;
    while (changed && children.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < children.size(); ++i) {
            std::vector<Term> rest;
            for (std::size_t j = 0; j < children.size(); ++j)
                if (j != i) rest.push_back(children[j]);
            Term host = rest.size() == 1 ? rest[0] : sum(rest);
            if (all_classes_dominated(children[i], host)) {
                children.erase(children.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
}

// Merges countable clean chunks pairwise wherever their threshold profiles
// are consistent: a countable compact pair with rank-threshold genus set is
// determined by its invariant (alpha, n, threshold), so consistent chunks
// rebuild as one ord term.
void merge_countable(std::vector<Term>& children) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < children.size() && !changed; ++i) {
            if (children[i].kind != Term::Kind::ord) continue;
            for (std::size_t j = i + 1; j < children.size() && !changed; ++j) {
                if (children[j].kind != Term::Kind::ord) continue;
                auto m = ms_invariant(sum({children[i], children[j]}));
                if (m && !m->profile.mixed) {
                    children[i] = make_ord(*m);
                    children.erase(children.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
    }
}

Term normalize_rec(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return ord_term(Ordinal::zero(), 1,
                            is_genus(t.flag) ? GenusSpec::all() : GenusSpec::none());
        case Term::Kind::cantor:
            return t;
        case Term::Kind::ord: {
            Term u = t;
            // canonical genus spec against the realized ranks
            if (u.gspec.kind == GenusSpec::Kind::at_least) {
                if (u.gspec.threshold > u.alpha)
                    u.gspec = GenusSpec::none();
                else if (u.gspec.threshold.is_zero())
                    u.gspec = GenusSpec::all();
            }
            return u;
        }
        case Term::Kind::omega: {
            Term child = normalize_rec(t.children[0]);
            if (is_countable(child)) {
                Term u = t;
                u.children[0] = child;
                auto m = ms_invariant(u);
                if (m && !m->profile.mixed) return make_ord(*m);
                u.children[0] = std::move(child);
                return u;
            }
            if (limit_absorbs(child, t.flag)) return child;
            Term u = t;
            u.children[0] = std::move(child);
            return u;
        }
        case Term::Kind::line: {
            Term child = normalize_rec(t.children[0]);
            if (is_countable(child)) {
                Term u = t;
                u.children[0] = child;
                auto m = ms_invariant(u);
                if (m && !m->profile.mixed) return make_ord(*m);
                u.children[0] = std::move(child);
                return u;
            }
            if (t.flag == t.flag2 && limit_absorbs(child, t.flag)) return child;
            Term u = t;
            u.children[0] = std::move(child);
            // reflection symmetry: order the two compactification flags
            if (static_cast<int>(u.flag) > static_cast<int>(u.flag2))
                std::swap(u.flag, u.flag2);
            return u;
        }
        case Term::Kind::cacc: {
            Term child = normalize_rec(t.children[0]);
            // collapse nested absorbing attachments
            if (child.kind == Term::Kind::cantor && child.flag == t.flag) return child;
            if (child.kind == Term::Kind::cacc && child.flag == t.flag) return child;
            if (child.kind == Term::Kind::sum) {
                std::vector<Term> kids = child.children;
                absorb_children(kids);
                child = kids.size() == 1 ? kids[0] : sum(std::move(kids));
            }
            Term u = t;
            u.children[0] = std::move(child);
            return u;
        }
        case Term::Kind::fan: {
            Term base = normalize_rec(t.children[0]);
            Term u = t;
            u.children[0] = std::move(base);
            if (is_countable(u.children[0])) {
                auto m = ms_invariant(u);
                if (m && !m->profile.mixed) return make_ord(*m);
            }
            // the two-sided arrangement is symmetric under swapping sides
            if (u.n == 2 && static_cast<int>(u.flag) > static_cast<int>(u.flag2))
                std::swap(u.flag, u.flag2);
            return u;
        }
        case Term::Kind::sum: {
            std::vector<Term> kids;
            for (const Term& c : t.children) {
                Term nc = normalize_rec(c);
                if (nc.kind == Term::Kind::sum)
                    kids.insert(kids.end(), nc.children.begin(), nc.children.end());
                else
                    kids.push_back(std::move(nc));
            }
            merge_countable(kids);
            absorb_children(kids);
            merge_countable(kids);
            if (kids.size() == 1) return kids[0];
            // countable chunks first, descending by rank; the rest in
            // structural order
            std::sort(kids.begin(), kids.end(), [](const Term& a, const Term& b) {
                bool oa = a.kind == Term::Kind::ord, ob = b.kind == Term::Kind::ord;
                if (oa != ob) return oa;
                if (oa && a.alpha != b.alpha) return b.alpha < a.alpha;
                return term_order(a, b) == std::strong_ordering::less;
            });
            return sum(std::move(kids));
        }
    }
    return t;
}

} // namespace

Term normalize(const Term& t) { return normalize_rec(t); }

Tri is_homeomorphic(const Term& a, const Term& b, std::uint64_t depth) {
    Term na = normalize(a);
    Term nb = normalize(b);
    if (na == nb) return Tri::yes;
    bool ca = is_countable(na), cb = is_countable(nb);
    if (ca != cb) return Tri::no;
    if (ca) {
        auto ma = ms_invariant(na), mb = ms_invariant(nb);
        if (ma->alpha != mb->alpha || ma->n != mb->n) return Tri::no;
        if (ma->profile.mixed != mb->profile.mixed) return Tri::no;
        if (!ma->profile.mixed && ma->profile != mb->profile) return Tri::no;
        // equal invariants but different mixed-profile structure
        if (symbolic_fingerprint(na, depth) != symbolic_fingerprint(nb, depth))
            return Tri::no;
        return Tri::unknown;
    }
    if (has_genus_end(na) != has_genus_end(nb)) return Tri::no;
    if (symbolic_fingerprint(na, depth) != symbolic_fingerprint(nb, depth))
        return Tri::no;
    return Tri::unknown;
}

} // namespace endcb
