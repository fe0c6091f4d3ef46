#include "endcb/classify.hpp"

#include "endcb/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace endcb {

std::string obstruction_kind(const Obstruction& o) {
    struct V {
        std::string operator()(const FiniteNonzeroGenus&) { return "FiniteNonzeroGenus"; }
        std::string operator()(const InvariantFiniteEndSet&) {
            return "InvariantFiniteEndSet";
        }
        std::string operator()(const PantsXY&) { return "PantsXY"; }
        std::string operator()(const LimitType&) { return "LimitType"; }
        std::string operator()(const InfiniteRank&) { return "InfiniteRank"; }
        std::string operator()(const NoStabilizingComplement&) {
            return "NoStabilizingComplement";
        }
    };
    return std::visit(V{}, o);
}

std::string obstruction_str(const Obstruction& o) {
    struct V {
        std::string operator()(const FiniteNonzeroGenus& c) {
            return "finite nonzero genus " + std::to_string(c.genus) +
                   ": any subsurface carrying all the genus is nondisplaceable";
        }
        std::string operator()(const InvariantFiniteEndSet& c) {
            std::string s = "invariant finite end set of size " + std::to_string(c.size) +
                            " from classes {";
            for (std::size_t i = 0; i < c.class_germs.size(); ++i)
                s += (i ? ", " : "") + print(c.class_germs[i]);
            return s + "}: a subsurface separating it is nondisplaceable";
        }
        std::string operator()(const PantsXY& c) {
            return "disjoint closed invariant sets: Cantor class " + print(c.x_germ) +
                   " and class " + print(c.y_germ) +
                   ": a pair of pants separating them is nondisplaceable";
        }
        std::string operator()(const LimitType& c) {
            return "limit type at " + c.invariant_set + " via " + c.family;
        }
        std::string operator()(const InfiniteRank& c) {
            std::string s = "infinite rank at " + c.invariant_set + " via classes {";
            for (std::size_t i = 0; i < c.z_germs.size(); ++i)
                s += (i ? ", " : "") + print(c.z_germs[i]);
            return s + "}";
        }
        std::string operator()(const NoStabilizingComplement& c) {
            std::string s = "no neighborhood of the maximal class " +
                            print(c.maximal_germ) +
                            " has a complement realizing the types {";
            for (std::size_t i = 0; i < c.growing_types.size(); ++i)
                s += (i ? ", " : "") + c.growing_types[i];
            return s + "}";
        }
    };
    return std::visit(V{}, o);
}

Tri is_self_similar(const Term& t, std::uint64_t depth) {
    Term n = normalize(t);
    if (is_finite_space(n)) return finite_space_size(n) == 1 ? Tri::yes : Tri::no;
    ClassPoset p = classes(n);
    std::vector<std::size_t> max = p.maximal();
    if (max.size() >= 2) return Tri::no;
    const EndClass& m = p.classes[max[0]];
    if (m.card.kind == Cardinality::Kind::finite && m.card.count >= 2) return Tri::no;
    auto germ = stable_neighborhood(m);
    if (!germ) return Tri::unknown;
    return is_homeomorphic(*germ, n, depth);
}

Tri is_telescoping(const Surface& s) {
    if (!s.infinite_genus() && *s.genus >= 1) return Tri::no;
    if (is_countable(s.ends)) return Tri::no;
    Term n = normalize(s.ends);
    if (n.kind == Term::Kind::line) {
        const Term& z = n.children[0];
        if (n.flag != n.flag2) return Tri::no;
        if (is_genus(n.flag) != has_genus_end(z)) return Tri::no;
        return is_tame(z);
    }
    ClassPoset p = classes(n);
    std::vector<std::size_t> max = p.maximal();
    bool all_finite = true;
    std::uint64_t total = 0;
    for (std::size_t i : max) {
        if (p.classes[i].card.kind != Cardinality::Kind::finite) all_finite = false;
        else total += p.classes[i].card.count;
    }
    if (!all_finite) return Tri::unknown;
    if (total != 2) return Tri::no;
    // both distinguished ends must dominate every class
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        for (std::size_t i : max)
            if (!p.leq(c, i)) return Tri::no;
    for (const ClassFamily& f : p.families) {
        for (std::size_t i : max) {
            bool ok = false;
            // conservative: every family member must sit below each end
            if (p.classes[i].germ.kind == Term::Kind::ord ||
                p.classes[i].germ.kind == Term::Kind::fan ||
                p.classes[i].germ.kind == Term::Kind::omega) {
                ok = true; // cofinal families below chunk tops; checked via chunks
                for (const std::string& ch : f.chunks) {
                    Cardinality in = p.classes[i].card_in(ch);
                    if (in.kind == Cardinality::Kind::finite && in.count == 0) ok = false;
                }
            }
            if (!ok) return Tri::no;
        }
    }
    // telescoping with an invariant two-point set gives a coarsely bounded
    // group, so any obstruction to bounded generation disqualifies it
    if (has_limit_type(s) == Tri::yes || has_infinite_rank(s) == Tri::yes)
        return Tri::no;
    return Tri::unknown;
}

namespace {

// Chunk structure of a poset: chunk ids with their top (maximal) class.
struct Chunks {
    std::vector<std::string> ids;
    std::vector<std::size_t> top; // class index per chunk
};

Chunks chunk_structure(const ClassPoset& p) {
    Chunks out;
    std::set<std::string> seen;
    for (const EndClass& c : p.classes)
        for (const auto& [cid, card] : c.chunk_cards)
            if (seen.insert(cid).second) out.ids.push_back(cid);
    std::sort(out.ids.begin(), out.ids.end());
    std::vector<std::size_t> max = p.maximal();
    for (const std::string& cid : out.ids) {
        std::size_t best = static_cast<std::size_t>(-1);
        for (std::size_t i : max) {
            Cardinality in = p.classes[i].card_in(cid);
            if (!(in.kind == Cardinality::Kind::finite && in.count == 0)) {
                best = i;
                break;
            }
        }
        if (best == static_cast<std::size_t>(-1)) {
            // fall back: the class dominating everything present in the chunk
            for (std::size_t i = 0; i < p.classes.size(); ++i) {
                Cardinality in = p.classes[i].card_in(cid);
                if (in.kind == Cardinality::Kind::finite && in.count == 0) continue;
                bool tops = true;
                for (std::size_t j = 0; j < p.classes.size() && tops; ++j) {
                    Cardinality jn = p.classes[j].card_in(cid);
                    if (jn.kind == Cardinality::Kind::finite && jn.count == 0) continue;
                    if (!p.leq(j, i)) tops = false;
                }
                if (tops) {
                    best = i;
                    break;
                }
            }
        }
        out.top.push_back(best);
    }
    return out;
}

// The chunk term a given chunk id denotes, following the same top-level
// splitting as classes().
std::optional<Term> chunk_term_of(const Term& normalized, const std::string& cid) {
    auto split_of = [&](const Term& t, const std::string& sub) -> std::optional<Term> {
        switch (t.kind) {
            case Term::Kind::ord:
                if (t.n >= 2) {
                    Term block = t;
                    block.n = 1;
                    return block;
                }
                return t;
            case Term::Kind::line: {
                if (sub == "L") return omega_term(t.children[0], t.flag);
                if (sub == "R") return omega_term(t.children[0], t.flag2);
                return t;
            }
            case Term::Kind::fan:
                if (t.n == 2) {
                    Term side = t;
                    side.n = 1;
                    if (sub == "L") side.flag2 = side.flag;
                    else {
                        side.flag = side.flag2;
                    }
                    return side;
                }
                return t;
            default:
                return t;
        }
    };
    // cid forms: "cN" or "cN.sub"
    std::size_t dot = cid.find('.');
    std::string head = dot == std::string::npos ? cid : cid.substr(0, dot);
    std::string sub = dot == std::string::npos ? "" : cid.substr(dot + 1);
    std::size_t index = 0;
    if (head.size() > 1) index = static_cast<std::size_t>(std::stoul(head.substr(1)));
    const Term* base = &normalized;
    if (normalized.kind == Term::Kind::sum) {
        if (index >= normalized.children.size()) return std::nullopt;
        base = &normalized.children[index];
    }
    return split_of(*base, sub);
}

// Fundamental piece of a chunk: the building block whose copies march to the
// chunk's top end. nullopt when no fixed piece covers the chunk cofinally.
std::optional<Term> fundamental_piece(const Term& chunk) {
    switch (chunk.kind) {
        case Term::Kind::ord: {
            if (chunk.alpha.is_zero()) return std::nullopt;
            if (chunk.alpha.is_successor()) {
                Ordinal b = chunk.alpha.predecessor();
                GenusProfile prof = GenusProfile::from_spec(chunk.gspec, chunk.alpha);
                if (b.is_zero())
                    return std::nullopt; // pieces are single punctures, not regions
                return ord_term(b, 1, prof.slice(b).to_spec());
            }
            return std::nullopt; // limit: piece ranks are unbounded
        }
        case Term::Kind::omega:
        case Term::Kind::cacc:
            return chunk.children[0];
        case Term::Kind::cantor:
            return chunk;
        case Term::Kind::fan:
            return std::nullopt; // handled by piece search
        default:
            return std::nullopt;
    }
}

struct AnchorCheck {
    bool ok = true;
    std::vector<std::string> failing; // printable class descriptions
    std::vector<std::size_t> failing_chunks;
    bool used_piece = false; // some chunk needed a P piece
    std::vector<std::pair<std::size_t, Term>> p_pieces; // chunk index -> piece
    // A maximal class of isolated planar ends: those live as punctures of
    // every candidate subsurface and can never fill a self-similar region,
    // so the failure is unconditional.
    bool planar_maximal = false;
};

bool anchored_in_piece(const ClassPoset& p, const Term& germ, const Term& piece) {
    ClassPoset piece_classes = classes(piece);
    for (const EndClass& d : piece_classes.classes) {
        if (interior_embeds(germ, d.germ)) return true;
        if (d.germ == germ && d.card.is_infinite()) return true;
    }
    (void)p;
    return false;
}

bool fan_piece_anchor(const Term& chunk, const Term& germ, Term& piece_out) {
    if (chunk.kind != Term::Kind::fan) return false;
    Term piece = chunk.children[0];
    for (int k = 1; k <= 8; ++k) {
        piece = omega_term(piece, chunk.iflag);
        if (embeds(germ, piece)) {
            piece_out = piece;
            return true;
        }
    }
    return false;
}

AnchorCheck stabilization_check(const ClassPoset& p, const Chunks& chunks,
                                const Term& normalized) {
    AnchorCheck out;
    Term planar_pt = ord_term(Ordinal::zero(), 1, GenusSpec::none());
    for (std::size_t m : p.maximal()) {
        if (p.classes[m].germ == planar_pt) {
            out.ok = false;
            out.planar_maximal = true;
            out.failing.push_back(
                "isolated planar maximal ends: punctures of every candidate "
                "subsurface, never ends of a self-similar region");
            for (std::size_t a = 0; a < chunks.ids.size(); ++a)
                if (chunks.top[a] == m) out.failing_chunks.push_back(a);
        }
    }
    for (std::size_t a = 0; a < chunks.ids.size(); ++a) {
        const std::string& cid = chunks.ids[a];
        std::optional<Term> chunk_term = chunk_term_of(normalized, cid);
        std::optional<Term> piece =
            chunk_term ? fundamental_piece(*chunk_term) : std::nullopt;
        auto try_anchor = [&](const Term& germ, bool family_all) -> bool {
            // (b) dominating class anchored outside this chunk
            for (std::size_t d = 0; d < p.classes.size(); ++d) {
                if (!p.classes[d].card_outside(cid).is_infinite() &&
                    p.classes[d].card_outside(cid).count == 0)
                    continue;
                if (!family_all && interior_embeds(germ, p.classes[d].germ)) return true;
            }
            for (const ClassFamily& f : p.families) {
                bool outside = false;
                for (const std::string& ch : f.chunks)
                    if (ch != cid) outside = true;
                if (outside && !family_all && family_dominates(f, germ)) return true;
            }
            // (c) a fixed fundamental piece hosting the class
            if (piece && anchored_in_piece(p, germ, *piece)) {
                out.used_piece = true;
                bool already = false;
                for (auto& [idx, pt_] : out.p_pieces)
                    if (idx == a) already = true;
                if (!already) out.p_pieces.emplace_back(a, *piece);
                return true;
            }
            if (chunk_term && chunk_term->kind == Term::Kind::fan && !family_all) {
                Term found;
                if (fan_piece_anchor(*chunk_term, germ, found)) {
                    out.used_piece = true;
                    bool already = false;
                    for (auto& [idx, pt_] : out.p_pieces)
                        if (idx == a) already = true;
                    if (!already) out.p_pieces.emplace_back(a, found);
                    return true;
                }
            }
            return false;
        };

        for (std::size_t c = 0; c < p.classes.size(); ++c) {
            if (c == chunks.top[a]) continue;
            Cardinality in = p.classes[c].card_in(cid);
            if (!in.is_infinite()) continue;
            // (a) the class itself has an infinite reservoir outside
            if (p.classes[c].card_outside(cid).is_infinite()) continue;
            if (try_anchor(p.classes[c].germ, false)) continue;
            out.ok = false;
            out.failing.push_back(print(p.classes[c].germ));
            out.failing_chunks.push_back(a);
        }
        for (const ClassFamily& f : p.families) {
            bool in_chunk = false, outside = false;
            for (const std::string& ch : f.chunks)
                (ch == cid ? in_chunk : outside) = true;
            if (!in_chunk || outside) continue; // (a): family spread over chunks
            // (b) single dominating anchor outside
            bool ok = false;
            for (std::size_t d = 0; d < p.classes.size() && !ok; ++d) {
                Cardinality o = p.classes[d].card_outside(cid);
                bool present = o.is_infinite() || o.count > 0;
                if (present && family_all_dominated(f, p.classes[d].germ)) ok = true;
            }
            // (c) fixed piece dominating the whole family
            if (!ok && piece) {
                ClassPoset pc = classes(*piece);
                for (const EndClass& d : pc.classes)
                    if (family_all_dominated(f, d.germ)) {
                        ok = true;
                        out.used_piece = true;
                        bool already = false;
                        for (auto& [idx, pt_] : out.p_pieces)
                            if (idx == a) already = true;
                        if (!already) out.p_pieces.emplace_back(a, *piece);
                    }
            }
            if (!ok) {
                out.ok = false;
                out.failing.push_back(f.str());
                out.failing_chunks.push_back(a);
            }
        }
    }
    return out;
}

} // namespace

Tri has_limit_type(const Surface& s) {
    ClassPoset p = classes(s.ends);
    for (const ClassFamily& f : p.families) {
        if (!f.climbing_confined) continue;
        bool infinite_range =
            f.kind == ClassFamily::Kind::fan_pieces || !f.sup.is_finite();
        if (!infinite_range) continue;
        if (f.chunks.size() >= 2) return Tri::yes;
    }
    return Tri::no;
}

Tri has_infinite_rank(const Surface& s) {
    Term n = normalize(s.ends);
    if (is_countable(n)) return Tri::no;
    // qualifying shapes at the top level: repeated fans whose accumulation
    // points, grouped by schema, total at least two
    std::vector<const Term*> tops;
    if (n.kind == Term::Kind::sum)
        for (const Term& c : n.children) tops.push_back(&c);
    else
        tops.push_back(&n);
    std::map<std::string, std::uint64_t> acc_by_schema;
    for (const Term* t : tops) {
        if (t->kind == Term::Kind::fan && t->mult == FanMult::repeated &&
            !is_countable(t->children[0]))
            acc_by_schema[print(t->children[0]) + (is_genus(t->iflag) ? "#g" : "#p")] +=
                t->n;
    }
    for (const auto& [schema, count] : acc_by_schema)
        if (count >= 2) return Tri::yes;
    // repeated fans buried deeper resist this analysis
    std::function<bool(const Term&)> deep_rep = [&](const Term& t) -> bool {
        bool top_level = false;
        for (const Term* u : tops) top_level = top_level || (u == &t);
        if (t.kind == Term::Kind::fan && t.mult == FanMult::repeated && !top_level &&
            !is_countable(t.children[0]))
            return true;
        for (const Term& c : t.children)
            if (deep_rep(c)) return true;
        return false;
    };
    for (const Term* t : tops)
        for (const Term& c : t->children)
            if (deep_rep(c)) return Tri::unknown;
    return Tri::no;
}

std::optional<Obstruction> nondisplaceable_certificate(const Surface& s) {
    if (!s.infinite_genus() && *s.genus >= 1)
        return Obstruction{FiniteNonzeroGenus{*s.genus}};
    ClassPoset p = classes(s.ends);
    std::uint64_t finite_total = 0;
    std::vector<Term> finite_germs;
    for (const EndClass& c : p.classes) {
        if (c.card.kind == Cardinality::Kind::finite) {
            finite_total += c.card.count;
            finite_germs.push_back(c.germ);
        }
    }
    if (finite_total >= 3)
        return Obstruction{InvariantFiniteEndSet{finite_total, finite_germs}};
    for (std::size_t x = 0; x < p.classes.size(); ++x) {
        if (p.classes[x].card.kind != Cardinality::Kind::cantor) continue;
        for (std::size_t y = 0; y < p.classes.size(); ++y) {
            if (y == x) continue;
            // closures disjoint: no class both accumulates-from x and from y,
            // and neither closure contains the other's class
            bool disjoint = true;
            auto in_closure = [&](std::size_t cls, std::size_t of) {
                return cls == of || p.accumulates(of, cls);
            };
            for (std::size_t z = 0; z < p.classes.size() && disjoint; ++z)
                if (in_closure(z, x) && in_closure(z, y)) disjoint = false;
            if (disjoint)
                return Obstruction{PantsXY{p.classes[x].germ, p.classes[y].germ}};
        }
    }
    return std::nullopt;
}

namespace {

std::string limit_family_descr(const ClassFamily& f) {
    if (f.kind == ClassFamily::Kind::ord_ranks)
        return "pairwise inequivalent classes of rank b for b cofinal below " +
               f.sup.str();
    return "pairwise inequivalent schema tail classes X(k), k = 1, 2, ...";
}

} // namespace

Verdict classify(const Surface& s, std::uint64_t depth) {
    if (!is_infinite_type(s))
        throw ScopeError("finite-type surface: classifier covers infinite type only");
    {
        auto violations = validate(s);
        if (!violations.empty())
            throw std::invalid_argument("invalid surface: " + violations[0].message);
    }

    Verdict v;
    auto note = [&](std::string rule, std::string statement, std::string detail = "") {
        v.explanation.push_back({std::move(rule), std::move(statement), std::move(detail)});
    };

    std::function<bool(const Term&)> has_cacc = [&](const Term& t) {
        if (t.kind == Term::Kind::cacc) return true;
        for (const Term& c : t.children)
            if (has_cacc(c)) return true;
        return false;
    };
    if (has_cacc(s.ends))
        note("cacc-attachment-axiom",
             "verdict reads cacc as the canonical homogeneous attachment (copies "
             "dense along the Cantor set, diameters shrinking); distinct attachment "
             "layouts are assumed pair-homeomorphic");

    Term n = normalize(s.ends);
    ClassPoset poset = classes(n);
    Chunks chunks = chunk_structure(poset);

    Tri ss = is_self_similar(n, depth);
    Tri tel = is_telescoping(s);
    bool countable = is_countable(n);
    Tri tame = is_tame(n);
    auto cert = nondisplaceable_certificate(s);
    Tri lt = has_limit_type(s);
    Tri ir = has_infinite_rank(s);

    bool genus_ok = s.infinite_genus() || *s.genus == 0;

    // ---- global coarse boundedness ----
    if (genus_ok && ss == Tri::yes) {
        v.globally_cb = Tri::yes;
        note("self-similar-bounded",
             "a self-similar end space on a surface of zero or infinite genus gives a "
             "coarsely bounded mapping class group");
    } else if (genus_ok && tel == Tri::yes) {
        v.globally_cb = Tri::yes;
        note("telescoping-bounded",
             "a telescoping end space on a surface of zero or infinite genus gives a "
             "coarsely bounded mapping class group");
    } else if (cert) {
        v.globally_cb = Tri::no;
        v.certificates.push_back(*cert);
        note("nondisplaceable-subsurface",
             "a nondisplaceable finite-type subsurface forces unbounded mapping class "
             "group geometry",
             obstruction_str(*cert));
    } else if ((tame == Tri::yes || countable) && ss == Tri::no && tel == Tri::no) {
        v.globally_cb = Tri::no;
        note("bounded-classification-complete",
             "for tame or countable end spaces, coarse boundedness holds exactly for "
             "self-similar or telescoping end spaces of zero or infinite genus");
    } else {
        v.globally_cb = Tri::unknown;
        if (ss == Tri::unknown)
            v.unknown_reason = "self-similarity undecided: germ-to-whole homeomorphism "
                               "comparison returned unknown";
        else if (tel == Tri::unknown)
            v.unknown_reason =
                "telescoping undecided beyond line-shaped end spaces";
        else
            v.unknown_reason = "tameness undecided on this end space";
        note("bounded-unknown", "boundedness undecided", v.unknown_reason);
    }

    // ---- local coarse boundedness ----
    AnchorCheck anchors = stabilization_check(poset, chunks, n);
    if (v.globally_cb == Tri::yes) {
        v.locally_cb = Tri::yes;
        note("bounded-implies-locally",
             "a coarsely bounded group is locally coarsely bounded");
    } else if (anchors.ok) {
        v.locally_cb = Tri::yes;
        KWitness w;
        w.k_genus = s.infinite_genus() ? 0 : *s.genus;
        for (const std::string& cid : chunks.ids) {
            auto ct = chunk_term_of(n, cid);
            if (ct) w.a_pieces.push_back(*ct);
        }
        for (auto& [idx, piece] : anchors.p_pieces)
            w.p_pieces.push_back({piece, idx});
        w.k_boundary_count = std::max<std::uint64_t>(
            1, w.a_pieces.size() + w.p_pieces.size());
        Count iso = isolated_planar_count(n);
        w.k_punctures = iso.infinite ? 0 : iso.value;
        v.witness = w;
        note("locally-cb-witness",
             "a finite-type subsurface separating the maximal end clusters gives a "
             "coarsely bounded identity neighborhood",
             "pieces: " + std::to_string(w.a_pieces.size()) + " self-similar + " +
                 std::to_string(w.p_pieces.size()) + " absorbable");
    } else {
        // A stabilization failure refutes local boundedness outright unless
        // the empty-subsurface case (globally CB end space) is still open.
        bool definite = (!s.infinite_genus() && *s.genus >= 1) ||
                        (ss == Tri::no && tel == Tri::no) || anchors.planar_maximal ||
                        v.globally_cb == Tri::no;
        if (definite) {
            v.locally_cb = Tri::no;
            NoStabilizingComplement c;
            if (!anchors.failing_chunks.empty())
                c.maximal_germ = poset.classes[chunks.top[anchors.failing_chunks[0]]].germ;
            c.growing_types = anchors.failing;
            v.certificates.push_back(Obstruction{c});
            note("stabilization-failure",
                 "no neighborhood of a maximal end has a complement realizing every "
                 "non-maximal type, so no identity neighborhood is coarsely bounded",
                 obstruction_str(Obstruction{c}));
        } else {
            v.locally_cb = Tri::unknown;
            if (v.unknown_reason.empty())
                v.unknown_reason = "stabilization failed on the canonical partition but "
                                   "boundedness of the whole space is undecided";
            note("locally-unknown", "local boundedness undecided", v.unknown_reason);
        }
    }

    // ---- CB generation ----
    if (v.globally_cb == Tri::yes) {
        v.cb_generated = Tri::yes;
        note("bounded-implies-generated",
             "a coarsely bounded group is generated by a coarsely bounded set");
    } else if (lt == Tri::yes) {
        v.cb_generated = Tri::no;
        LimitType c;
        c.invariant_set = "the maximal end cluster";
        for (const ClassFamily& f : poset.families)
            if (f.climbing_confined && f.chunks.size() >= 2) {
                c.family = limit_family_descr(f);
                break;
            }
        v.certificates.push_back(Obstruction{c});
        note("limit-type",
             "a cofinal family of pairwise inequivalent end types confined to an "
             "invariant maximal set obstructs coarsely bounded generation",
             obstruction_str(Obstruction{c}));
    } else if (ir == Tri::yes) {
        v.cb_generated = Tri::no;
        InfiniteRank c;
        c.invariant_set = "the two accumulation points of the repeated schema";
        std::vector<const Term*> tops;
        if (n.kind == Term::Kind::sum)
            for (const Term& ch : n.children) tops.push_back(&ch);
        else
            tops.push_back(&n);
        for (const Term* t : tops) {
            if (t->kind == Term::Kind::fan && t->mult == FanMult::repeated &&
                !is_countable(t->children[0])) {
                Term piece = t->children[0];
                for (int k = 1; k <= 3; ++k) {
                    piece = omega_term(piece, t->iflag);
                    c.z_germs.push_back(piece);
                    c.homomorphisms.push_back(
                        "l_" + std::to_string(k) +
                        "(phi) = |(E(z_" + std::to_string(k) + ") in U) - phi^-1(U)| - "
                        "|(E(z_" + std::to_string(k) + ") in phi^-1(U)) - U| counting "
                        "schema level " + std::to_string(k) + " tails crossing U");
                }
                break;
            }
        }
        v.certificates.push_back(Obstruction{c});
        note("infinite-rank",
             "independent integer-valued shift-counting homomorphisms obstruct "
             "coarsely bounded generation",
             obstruction_str(Obstruction{c}));
    } else if (v.locally_cb == Tri::no) {
        v.cb_generated = Tri::no;
        note("generated-requires-locally",
             "without a coarsely bounded identity neighborhood there is no coarsely "
             "bounded generating set in this classification");
    } else if (tame == Tri::yes && v.locally_cb == Tri::yes && lt == Tri::no &&
               ir == Tri::no) {
        v.cb_generated = Tri::yes;
        note("tame-cb-generated",
             "for tame end spaces, locally bounded plus neither limit type nor "
             "infinite rank gives a coarsely bounded generating set");
    } else {
        v.cb_generated = Tri::unknown;
        if (v.unknown_reason.empty())
            v.unknown_reason = ir == Tri::unknown
                                   ? "infinite-rank analysis undecided for nested "
                                     "repeated schemas"
                                   : "generation undecided";
        note("generated-unknown", "generation undecided", v.unknown_reason);
    }

    // ---- monotonicity repair and assertion ----
    if (v.globally_cb == Tri::yes) {
        v.cb_generated = Tri::yes;
        v.locally_cb = Tri::yes;
    }
    if (v.cb_generated == Tri::yes && v.locally_cb == Tri::unknown)
        v.locally_cb = Tri::yes;
    if (v.locally_cb == Tri::no && v.cb_generated == Tri::unknown)
        v.cb_generated = Tri::no;
    if (v.cb_generated == Tri::no && v.globally_cb == Tri::unknown) {
        v.globally_cb = Tri::no;
        note("monotone",
             "a group generated by no coarsely bounded set is not coarsely bounded");
    }
    if (v.locally_cb != Tri::unknown && v.cb_generated != Tri::unknown &&
        v.globally_cb != Tri::unknown)
        v.unknown_reason.clear();

    return v;
}

bool check_obstruction(const Surface& s, const Obstruction& o) {
    struct V {
        const Surface& s;
        bool operator()(const FiniteNonzeroGenus& c) {
            return !s.infinite_genus() && *s.genus == c.genus && c.genus >= 1;
        }
        bool operator()(const InvariantFiniteEndSet& c) {
            ClassPoset p = classes(s.ends);
            std::uint64_t total = 0;
            for (const EndClass& e : p.classes)
                if (e.card.kind == Cardinality::Kind::finite) total += e.card.count;
            return total >= 3 && total == c.size;
        }
        bool operator()(const PantsXY& c) {
            ClassPoset p = classes(s.ends);
            std::size_t xi = p.classes.size(), yi = p.classes.size();
            for (std::size_t i = 0; i < p.classes.size(); ++i) {
                if (p.classes[i].germ == c.x_germ) xi = i;
                if (p.classes[i].germ == c.y_germ) yi = i;
            }
            if (xi == p.classes.size() || yi == p.classes.size()) return false;
            if (p.classes[xi].card.kind != Cardinality::Kind::cantor) return false;
            for (std::size_t z = 0; z < p.classes.size(); ++z) {
                bool in_x = z == xi || p.accumulates(xi, z);
                bool in_y = z == yi || p.accumulates(yi, z);
                if (in_x && in_y) return false;
            }
            return true;
        }
        bool operator()(const LimitType&) {
            ClassPoset p = classes(s.ends);
            for (const ClassFamily& f : p.families) {
                bool infinite_range =
                    f.kind == ClassFamily::Kind::fan_pieces || !f.sup.is_finite();
                if (f.climbing_confined && infinite_range && f.chunks.size() >= 2)
                    return true;
            }
            return false;
        }
        bool operator()(const InfiniteRank& c) {
            if (c.z_germs.size() < 3 || c.homomorphisms.size() < 3) return false;
            return has_infinite_rank(s) == Tri::yes;
        }
        bool operator()(const NoStabilizingComplement&) {
            Term n = normalize(s.ends);
            ClassPoset p = classes(n);
            Chunks ch = chunk_structure(p);
            return !stabilization_check(p, ch, n).ok;
        }
    };
    return std::visit(V{s}, o);
}

} // namespace endcb
