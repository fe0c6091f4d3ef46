#include "endcb/order.hpp"

#include "endcb/parser.hpp"

#include <algorithm>
#include <map>

namespace endcb {

std::string Cardinality::str() const {
    switch (kind) {
        case Kind::finite: return "finite(" + std::to_string(count) + ")";
        case Kind::countably_infinite: return "countably_infinite";
        case Kind::cantor: return "cantor";
    }
    return "";
}

namespace {

Cardinality card_add(Cardinality a, Cardinality b) {
    if (a.kind == Cardinality::Kind::cantor || b.kind == Cardinality::Kind::cantor)
        return Cardinality::cantor_set();
    if (a.kind == Cardinality::Kind::countably_infinite ||
        b.kind == Cardinality::Kind::countably_infinite)
        return Cardinality::inf();
    return Cardinality::fin(a.count + b.count);
}

Cardinality card_scale(Cardinality c, bool infinite_context) {
    if (!infinite_context || c.kind == Cardinality::Kind::cantor) return c;
    return Cardinality::inf();
}

GenusProfile profile_of_ord(const Term& t) {
    return GenusProfile::from_spec(t.gspec, t.alpha);
}

Term ord_germ(const Ordinal& rank, const GenusProfile& chunk_profile) {
    return ord_term(rank, 1, chunk_profile.slice(rank).to_spec());
}

// Rank threshold profiles agree on all ranks < bound.
bool profiles_agree_below(const GenusProfile& a, const GenusProfile& b,
                          const Ordinal& bound) {
    if (a.mixed || b.mixed) return false;
    bool a_in = a.threshold && *a.threshold < bound;
    bool b_in = b.threshold && *b.threshold < bound;
    if (a_in != b_in) return false;
    if (a_in) return *a.threshold == *b.threshold;
    return true;
}

constexpr std::uint64_t kMaterializeCap = 8;
constexpr int kFanSearchPad = 3;

std::uint64_t omega_nesting(const Term& t) {
    if (t.kind == Term::Kind::omega) return 1 + omega_nesting(t.children[0]);
    return 0;
}

Term fan_piece(const Term& fan_term, std::uint64_t k) {
    Term piece = fan_term.children[0];
    for (std::uint64_t i = 0; i < k; ++i) piece = omega_term(std::move(piece), fan_term.iflag);
    return piece;
}

} // namespace

bool embeds(const Term& g, const Term& host) {
    if (g == host) return true;
    switch (host.kind) {
        case Term::Kind::pt:
            return g.kind == Term::Kind::ord && g.alpha.is_zero() && g.n == 1 &&
                   profile_of_ord(g).flag_at(Ordinal::zero()) == host.flag;
        case Term::Kind::sum: {
            for (const Term& c : host.children)
                if (embeds(g, c)) return true;
            return false;
        }
        case Term::Kind::ord: {
            if (g.kind != Term::Kind::ord) return false;
            if (g.alpha > host.alpha) return false;
            if (g.alpha == host.alpha && g.n > host.n) return false;
            GenusProfile hp = profile_of_ord(host).slice(g.alpha);
            return profile_of_ord(g) == hp;
        }
        case Term::Kind::cantor:
            return false; // nonempty clopen subsets are again whole Cantor pieces
        case Term::Kind::cacc: {
            if (embeds(g, host.children[0])) return true;
            // a new limit point over converging cacc pieces is again a base point
            if (g.kind == Term::Kind::omega && g.flag == host.flag &&
                g.children[0] == host)
                return true;
            return false;
        }
        case Term::Kind::omega: {
            // Clopen neighborhoods of the limit point contain whole copies of
            // the child, so a copy rooted at the limit must be a full tail.
            return embeds(g, host.children[0]);
        }
        case Term::Kind::line: {
            const Term& x = host.children[0];
            if (embeds(g, x)) return true;
            // one-sided tails
            if (g.kind == Term::Kind::omega && g.children[0] == x &&
                (g.flag == host.flag || g.flag == host.flag2))
                return true;
            return false;
        }
        case Term::Kind::fan: {
            // one-sided tail germ
            if (g.kind == Term::Kind::fan && g.n == 1 &&
                g.children[0] == host.children[0] && g.mult == host.mult &&
                g.iflag == host.iflag &&
                (g.flag == host.flag || (host.n == 2 && g.flag == host.flag2)))
                return true;
            std::uint64_t bound = omega_nesting(g) + kFanSearchPad;
            for (std::uint64_t k = 1; k <= bound; ++k)
                if (embeds(g, fan_piece(host, k))) return true;
            return false;
        }
    }
    return false;
}

bool interior_embeds(const Term& g, const Term& b) {
    switch (b.kind) {
        case Term::Kind::pt:
            return false;
        case Term::Kind::ord: {
            if (g.kind != Term::Kind::ord) return false;
            if (!(g.alpha < b.alpha)) return false;
            if (g.n != 1) return false;
            return profile_of_ord(g) == profile_of_ord(b).slice(g.alpha);
        }
        case Term::Kind::cantor:
            return g == b;
        case Term::Kind::cacc:
            return embeds(g, b);
        case Term::Kind::omega:
            return embeds(g, b.children[0]);
        case Term::Kind::fan: {
            std::uint64_t bound = omega_nesting(g) + kFanSearchPad;
            for (std::uint64_t k = 1; k <= bound; ++k)
                if (embeds(g, fan_piece(b, k))) return true;
            return false;
        }
        default:
            return false;
    }
}

namespace {

struct Collector {
    std::vector<EndClass> entries;
    std::vector<ClassFamily> families;

    void add(Term germ, Cardinality card, const std::string& path,
             const std::string& chunk) {
        for (EndClass& e : entries) {
            if (e.germ == germ) {
                e.card = card_add(e.card, card);
                e.loci.push_back(path);
                bool found = false;
                for (auto& [cid, c] : e.chunk_cards)
                    if (cid == chunk) {
                        c = card_add(c, card);
                        found = true;
                    }
                if (!found) e.chunk_cards.emplace_back(chunk, card);
                return;
            }
        }
        EndClass e;
        e.germ = std::move(germ);
        e.card = card;
        e.loci.push_back(path);
        e.chunk_cards.emplace_back(chunk, card);
        entries.push_back(std::move(e));
    }

    void add_family(ClassFamily f, const std::string& path, const std::string& chunk) {
        for (ClassFamily& g : families) {
            if (g.same_family(f)) {
                g.loci.push_back(path);
                if (std::find(g.chunks.begin(), g.chunks.end(), chunk) == g.chunks.end())
                    g.chunks.push_back(chunk);
                g.climbing_confined = g.climbing_confined && f.climbing_confined;
                return;
            }
        }
        f.loci.push_back(path);
        f.chunks.push_back(chunk);
        families.push_back(std::move(f));
    }
};

void collect(const Term& t, const std::string& path, const std::string& chunk,
             bool inf_ctx, Collector& out) {
    switch (t.kind) {
        case Term::Kind::pt:
            out.add(ord_term(Ordinal::zero(), 1,
                             is_genus(t.flag) ? GenusSpec::all() : GenusSpec::none()),
                    card_scale(Cardinality::fin(1), inf_ctx), path, chunk);
            return;
        case Term::Kind::sum: {
            for (std::size_t i = 0; i < t.children.size(); ++i)
                collect(t.children[i], path + "/" + std::to_string(i), chunk, inf_ctx, out);
            return;
        }
        case Term::Kind::cantor:
            out.add(t, Cardinality::cantor_set(), path, chunk);
            return;
        case Term::Kind::cacc: {
            collect(t.children[0], path + "/0", chunk, true, out);
            out.add(t, Cardinality::cantor_set(), path, chunk);
            return;
        }
        case Term::Kind::omega: {
            collect(t.children[0], path + "/0", chunk, true, out);
            Term germ = t;
            if (is_countable(t)) {
                auto m = ms_invariant(t);
                if (!m->profile.mixed) germ = ord_term(m->alpha, 1, m->profile.to_spec());
            }
            out.add(std::move(germ), card_scale(Cardinality::fin(1), inf_ctx), path, chunk);
            return;
        }
        case Term::Kind::line: {
            collect(t.children[0], path + "/0", chunk, true, out);
            for (Flag f : {t.flag, t.flag2}) {
                Term tail = omega_term(t.children[0], f);
                Term germ = tail;
                if (is_countable(tail)) {
                    auto m = ms_invariant(tail);
                    if (!m->profile.mixed)
                        germ = ord_term(m->alpha, 1, m->profile.to_spec());
                }
                out.add(std::move(germ), card_scale(Cardinality::fin(1), inf_ctx), path,
                        chunk);
            }
            return;
        }
        case Term::Kind::ord: {
            GenusProfile prof = profile_of_ord(t);
            if (t.alpha.is_zero()) {
                out.add(ord_germ(Ordinal::zero(), prof),
                        card_scale(Cardinality::fin(t.n), inf_ctx), path, chunk);
                return;
            }
            out.add(ord_germ(Ordinal::zero(), prof), Cardinality::inf(), path, chunk);
            bool small = t.alpha.is_finite() && t.alpha.finite_value() <= kMaterializeCap;
            if (small) {
                for (Ordinal b = Ordinal::nat(1); b < t.alpha; b = b.successor())
                    out.add(ord_germ(b, prof), Cardinality::inf(), path, chunk);
            } else {
                Ordinal sup = t.alpha.is_limit() ? t.alpha : t.alpha.predecessor();
                ClassFamily f;
                f.kind = ClassFamily::Kind::ord_ranks;
                f.lo = Ordinal::nat(1);
                f.sup = sup;
                f.profile = prof;
                // inside an infinite copy family the ranks recur at every
                // scale, so members are not confined to the chunk's tail
                f.climbing_confined = t.alpha.is_limit() && !inf_ctx;
                out.add_family(std::move(f), path, chunk);
                if (t.alpha.is_successor())
                    out.add(ord_germ(t.alpha.predecessor(), prof), Cardinality::inf(),
                            path, chunk);
            }
            out.add(ord_germ(t.alpha, prof), card_scale(Cardinality::fin(t.n), inf_ctx),
                    path, chunk);
            return;
        }
        case Term::Kind::fan: {
            collect(t.children[0], path + "/0", chunk, true, out);
            ClassFamily f;
            f.kind = ClassFamily::Kind::fan_pieces;
            f.base = t.children[0];
            f.iflag = t.iflag;
            f.mult = t.mult;
            f.climbing_confined = t.mult == FanMult::once && !inf_ctx;
            out.add_family(std::move(f), path, chunk);
            std::vector<Flag> accs = {t.flag};
            if (t.n == 2) accs.push_back(t.flag2);
            for (Flag fa : accs) {
                Term germ = t;
                germ.n = 1;
                germ.flag = fa;
                germ.flag2 = fa;
                out.add(std::move(germ), card_scale(Cardinality::fin(1), inf_ctx), path,
                        chunk);
            }
            return;
        }
    }
}

// Top-level chunking: each maximal end cluster gets its own chunk id, the way
// a witness subsurface's boundary curves would separate them.
void collect_top(const Term& t, const std::string& path, const std::string& cid,
                 Collector& out) {
    switch (t.kind) {
        case Term::Kind::ord:
            if (t.n >= 2) {
                Term block = t;
                block.n = 1;
                for (std::uint64_t j = 0; j < t.n; ++j)
                    collect(block, path, cid + "." + std::to_string(j), false, out);
                return;
            }
            break;
        case Term::Kind::line: {
            Term left = omega_term(t.children[0], t.flag);
            Term right = omega_term(t.children[0], t.flag2);
            collect(left, path, cid + ".L", false, out);
            collect(right, path, cid + ".R", false, out);
            return;
        }
        case Term::Kind::fan:
            if (t.n == 2) {
                Term side = t;
                side.n = 1;
                side.flag2 = side.flag;
                collect(side, path, cid + ".L", false, out);
                Term side2 = t;
                side2.n = 1;
                side2.flag = side2.flag2;
                collect(side2, path, cid + ".R", false, out);
                return;
            }
            break;
        default:
            break;
    }
    collect(t, path, cid, false, out);
}

} // namespace

Cardinality EndClass::card_in(const std::string& chunk) const {
    Cardinality total = Cardinality::fin(0);
    for (const auto& [cid, c] : chunk_cards)
        if (cid == chunk) total = card_add(total, c);
    return total;
}

Cardinality EndClass::card_outside(const std::string& chunk) const {
    Cardinality total = Cardinality::fin(0);
    for (const auto& [cid, c] : chunk_cards)
        if (cid != chunk) total = card_add(total, c);
    return total;
}

bool ClassFamily::same_family(const ClassFamily& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::ord_ranks)
        return lo == o.lo && sup == o.sup && profile == o.profile;
    return base == o.base && iflag == o.iflag && mult == o.mult;
}

std::string ClassFamily::str() const {
    if (kind == Kind::ord_ranks)
        return "ranks [" + lo.str() + ", " + sup.str() + ")";
    return std::string("schema tails X(k), k >= 1") +
           (mult == FanMult::repeated ? " (repeated)" : "");
}

ClassPoset classes(const Term& t) {
    Term n = normalize(t);
    Collector col;
    if (n.kind == Term::Kind::sum) {
        for (std::size_t i = 0; i < n.children.size(); ++i)
            collect_top(n.children[i], "/" + std::to_string(i), "c" + std::to_string(i),
                        col);
    } else {
        collect_top(n, "", "c0", col);
    }

    ClassPoset p;
    p.source = std::move(n);
    p.classes = std::move(col.entries);
    p.families = std::move(col.families);
    std::size_t k = p.classes.size();
    p.leq_matrix.assign(k, std::vector<bool>(k, false));
    p.acc_matrix.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            bool intr = interior_embeds(p.classes[i].germ, p.classes[j].germ);
            p.acc_matrix[i][j] = intr;
            p.leq_matrix[i][j] = (i == j) || intr;
        }
    }
    return p;
}

namespace {

Term family_piece(const ClassFamily& f, std::uint64_t k) {
    Term piece = f.base;
    for (std::uint64_t i = 0; i < k; ++i) piece = omega_term(std::move(piece), f.iflag);
    return piece;
}

} // namespace

// Is there a family member strictly above the germ g?
bool family_dominates(const ClassFamily& f, const Term& g) {
    if (f.kind == ClassFamily::Kind::ord_ranks) {
        if (g.kind != Term::Kind::ord) return false;
        // some rank b with g.alpha < b < sup and matching profile slice
        if (!(g.alpha.successor() < f.sup)) return false;
        return profile_of_ord(g) == f.profile.slice(g.alpha);
    }
    // fan pieces: anything sitting clopen inside some X(k) lies strictly
    // below the X(k+1) member; the one-sided accumulation germ tops them all.
    if (g.kind == Term::Kind::fan) return false;
    std::uint64_t bound = omega_nesting(g) + kFanSearchPad;
    for (std::uint64_t k = 1; k <= bound; ++k)
        if (embeds(g, family_piece(f, k))) return true;
    return false;
}

// Every member of the family is dominated by the class with germ m.
bool family_all_dominated(const ClassFamily& f, const Term& m) {
    if (f.kind == ClassFamily::Kind::ord_ranks) {
        switch (m.kind) {
            case Term::Kind::ord:
                return f.sup <= m.alpha &&
                       profiles_agree_below(f.profile, profile_of_ord(m), f.sup);
            case Term::Kind::cacc:
            case Term::Kind::omega: {
                // all ranks below sup must embed into the host material
                const Term& x = m.children[0];
                if (f.sup.is_limit()) {
                    // need unbounded ranks inside x
                    if (x.kind == Term::Kind::ord)
                        return f.sup <= x.alpha &&
                               profiles_agree_below(f.profile, profile_of_ord(x), f.sup);
                    return false;
                }
                return embeds(ord_germ(f.sup.predecessor(), f.profile), x);
            }
            case Term::Kind::fan:
                return false;
            default:
                return false;
        }
    }
    // fan_pieces: dominated by the fan's own accumulation germ
    return m.kind == Term::Kind::fan && m.children[0] == f.base && m.iflag == f.iflag;
}

std::vector<std::size_t> ClassPoset::maximal() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        bool is_max = true;
        for (std::size_t j = 0; j < classes.size() && is_max; ++j)
            if (leq_matrix[i][j] && !leq_matrix[j][i]) is_max = false;
        if (is_max && family_member_above(i)) is_max = false;
        if (is_max) out.push_back(i);
    }
    return out;
}

bool ClassPoset::family_member_above(std::size_t c) const {
    for (const ClassFamily& f : families)
        if (family_dominates(f, classes[c].germ)) return true;
    return false;
}

std::vector<std::size_t> ClassPoset::immediate_predecessors(std::size_t m) const {
    std::vector<std::size_t> below;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (i != m && leq_matrix[i][m] && !leq_matrix[m][i]) below.push_back(i);
    std::vector<std::size_t> out;
    for (std::size_t i : below) {
        bool covered = false;
        for (std::size_t j : below)
            if (j != i && leq_matrix[i][j] && !leq_matrix[j][i]) covered = true;
        // a cofinal family between i and m absorbs the immediate predecessor
        if (!covered && family_member_above(i)) covered = true;
        if (!covered) out.push_back(i);
    }
    return out;
}

bool all_classes_dominated(const Term& y, const Term& s) {
    Collector ycol, scol;
    collect(y, "", "y", false, ycol);
    collect(s, "", "s", false, scol);
    // The consume rewrite needs the anchor point to accumulate points of the
    // absorbed class, so plain germ equality is not enough: finite classes of
    // the same type cannot absorb each other.
    for (const EndClass& e : ycol.entries) {
        bool ok = false;
        for (const EndClass& m : scol.entries) {
            if (interior_embeds(e.germ, m.germ)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    for (const ClassFamily& f : ycol.families) {
        bool ok = false;
        for (const EndClass& m : scol.entries) {
            if (family_all_dominated(f, m.germ)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

std::optional<Term> stable_neighborhood(const EndClass& c) {
    // Every germ the grammar produces is stable: ordinal germs re-embed into
    // their own tails, Cantor and cacc pieces are homogeneous, omega tails
    // contain tails, and iterated-schema fans re-embed piecewise.
    return c.germ;
}

Tri is_tame(const Term& t) {
    ClassPoset p = classes(t);
    std::vector<std::size_t> check = p.maximal();
    std::vector<std::size_t> preds;
    for (std::size_t m : check)
        for (std::size_t q : p.immediate_predecessors(m)) preds.push_back(q);
    check.insert(check.end(), preds.begin(), preds.end());
    for (std::size_t i : check)
        if (!stable_neighborhood(p.classes[i])) return Tri::unknown;
    return Tri::yes;
}

std::string poset_dot(const ClassPoset& p) {
    auto esc = [](const std::string& s) {
        std::string out;
        for (char c : s)
            if (c == '"')
                out += "\\\"";
            else
                out += c;
        return out;
    };
    std::string dot = "digraph classes {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        dot += "  c" + std::to_string(i) + " [label=\"" +
               esc(print(p.classes[i].germ)) + "\\n" + p.classes[i].card.str() +
               "\"];\n";
    }
    for (std::size_t i = 0; i < p.families.size(); ++i) {
        dot += "  f" + std::to_string(i) + " [shape=box,label=\"" +
               esc(p.families[i].str()) + "\"];\n";
    }
    // covering edges of the concrete order
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        for (std::size_t j = 0; j < p.classes.size(); ++j) {
            if (i == j || !p.leq_matrix[i][j] || p.leq_matrix[j][i]) continue;
            bool covered = false;
            for (std::size_t k = 0; k < p.classes.size() && !covered; ++k) {
                if (k == i || k == j) continue;
                if (p.leq_matrix[i][k] && !p.leq_matrix[k][i] && p.leq_matrix[k][j] &&
                    !p.leq_matrix[j][k])
                    covered = true;
            }
            if (!covered)
                dot += "  c" + std::to_string(i) + " -> c" + std::to_string(j) + ";\n";
        }
    }
    for (std::size_t f = 0; f < p.families.size(); ++f) {
        for (std::size_t j = 0; j < p.classes.size(); ++j) {
            if (family_all_dominated(p.families[f], p.classes[j].germ))
                dot += "  f" + std::to_string(f) + " -> c" + std::to_string(j) + ";\n";
        }
    }
    dot += "}\n";
    return dot;
}

} // namespace endcb
