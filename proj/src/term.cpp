#include "endcb/term.hpp"

#include <stdexcept>

namespace endcb {

Flag GenusSpec::flag_at(const Ordinal& rank) const {
    switch (kind) {
        case Kind::none: return Flag::planar;
        case Kind::all: return Flag::genus;
        case Kind::at_least: return rank >= threshold ? Flag::genus : Flag::planar;
    }
    return Flag::planar;
}

Term pt(Flag f) {
    Term t;
    t.kind = Term::Kind::pt;
    t.flag = f;
    return t;
}

Term sum(std::vector<Term> children) {
    Term t;
    t.kind = Term::Kind::sum;
    t.children = std::move(children);
    return t;
}

Flag forced_limit_flag(const Term& child) {
    return has_genus_end(child) ? Flag::genus : Flag::planar;
}

Term omega_term(Term child, std::optional<Flag> limit) {
    Term t;
    t.kind = Term::Kind::omega;
    t.flag = limit.value_or(forced_limit_flag(child));
    t.children.push_back(std::move(child));
    return t;
}

Term line(Term child, std::optional<Flag> f1, std::optional<Flag> f2) {
    Term t;
    t.kind = Term::Kind::line;
    Flag forced = forced_limit_flag(child);
    t.flag = f1.value_or(forced);
    t.flag2 = f2.value_or(forced);
    t.children.push_back(std::move(child));
    return t;
}

Term cantor(Flag f) {
    Term t;
    t.kind = Term::Kind::cantor;
    t.flag = f;
    return t;
}

Term cacc(Term child, std::optional<Flag> f) {
    Term t;
    t.kind = Term::Kind::cacc;
    t.flag = f.value_or(forced_limit_flag(child));
    t.children.push_back(std::move(child));
    return t;
}

Term ord_term(Ordinal alpha, std::uint64_t n, GenusSpec g) {
    Term t;
    t.kind = Term::Kind::ord;
    t.alpha = std::move(alpha);
    t.n = n;
    t.gspec = g;
    return t;
}

Term fan(Term base, int accum_points, std::optional<Flag> f1, std::optional<Flag> f2,
         FanMult mult) {
    Term t;
    t.kind = Term::Kind::fan;
    Flag forced = forced_limit_flag(base);
    t.flag = f1.value_or(forced);
    t.flag2 = f2.value_or(forced);
    t.n = static_cast<std::uint64_t>(accum_points);
    t.mult = mult;
    t.iflag = forced;
    t.children.push_back(std::move(base));
    return t;
}

namespace {

void validate_rec(const Term& t, const std::string& path, std::vector<Violation>& out) {
    auto child_path = [&](std::size_t i) { return path + "/" + std::to_string(i); };
    switch (t.kind) {
        case Term::Kind::pt:
            break;
        case Term::Kind::sum:
            if (t.children.size() < 2)
                out.push_back({path, "sum requires at least two children"});
            for (std::size_t i = 0; i < t.children.size(); ++i)
                validate_rec(t.children[i], child_path(i), out);
            break;
        case Term::Kind::omega:
            if (has_genus_end(t.children[0]) && !is_genus(t.flag))
                out.push_back({path, "limit flag must be genus: child has genus ends"});
            validate_rec(t.children[0], child_path(0), out);
            break;
        case Term::Kind::line:
            if (has_genus_end(t.children[0]) && (!is_genus(t.flag) || !is_genus(t.flag2)))
                out.push_back({path, "line end flags must be genus: child has genus ends"});
            validate_rec(t.children[0], child_path(0), out);
            break;
        case Term::Kind::cantor:
            break;
        case Term::Kind::cacc:
            if (has_genus_end(t.children[0]) && !is_genus(t.flag))
                out.push_back({path, "cacc flag must be genus: child has genus ends"});
            validate_rec(t.children[0], child_path(0), out);
            break;
        case Term::Kind::ord:
            if (t.n == 0) out.push_back({path, "ord coefficient must be positive"});
            break;
        case Term::Kind::fan:
            if (t.n != 1 && t.n != 2)
                out.push_back({path, "fan has one or two accumulation points"});
            if (has_genus_end(t.children[0]) &&
                (!is_genus(t.flag) || (t.n == 2 && !is_genus(t.flag2))))
                out.push_back({path, "fan accumulation flags must be genus: schema base has genus ends"});
            validate_rec(t.children[0], child_path(0), out);
            break;
    }
}

} // namespace

std::vector<Violation> validate(const Term& t) {
    std::vector<Violation> out;
    validate_rec(t, "", out);
    return out;
}

bool has_genus_end(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
        case Term::Kind::cantor:
            return is_genus(t.flag);
        case Term::Kind::sum: {
            for (const Term& c : t.children)
                if (has_genus_end(c)) return true;
            return false;
        }
        case Term::Kind::omega:
        case Term::Kind::cacc:
            return is_genus(t.flag) || has_genus_end(t.children[0]);
        case Term::Kind::line:
        case Term::Kind::fan:
            return is_genus(t.flag) || (t.n == 2 && is_genus(t.flag2)) ||
                   has_genus_end(t.children[0]);
        case Term::Kind::ord:
            if (t.gspec.kind == GenusSpec::Kind::all) return true;
            if (t.gspec.kind == GenusSpec::Kind::none) return false;
            return t.gspec.threshold <= t.alpha; // some realized rank is flagged
    }
    return false;
}

bool is_countable(const Term& t) {
    switch (t.kind) {
        case Term::Kind::cantor:
        case Term::Kind::cacc:
            return false;
        case Term::Kind::pt:
        case Term::Kind::ord:
            return true;
        default:
            for (const Term& c : t.children)
                if (!is_countable(c)) return false;
            return true;
    }
}

bool is_finite_space(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return true;
        case Term::Kind::ord:
            return t.alpha.is_zero();
        case Term::Kind::sum: {
            for (const Term& c : t.children)
                if (!is_finite_space(c)) return false;
            return true;
        }
        default:
            return false;
    }
}

std::uint64_t finite_space_size(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return 1;
        case Term::Kind::ord:
            return t.n;
        case Term::Kind::sum: {
            std::uint64_t s = 0;
            for (const Term& c : t.children) s += finite_space_size(c);
            return s;
        }
        default:
            throw std::domain_error("not a finite space");
    }
}

Count isolated_planar_count(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return Count::of(is_genus(t.flag) ? 0 : 1);
        case Term::Kind::cantor:
            return Count::of(0);
        case Term::Kind::sum: {
            Count total = Count::of(0);
            for (const Term& c : t.children) {
                Count k = isolated_planar_count(c);
                if (k.infinite) return Count::inf();
                total.value += k.value;
            }
            return total;
        }
        case Term::Kind::omega:
        case Term::Kind::line:
        case Term::Kind::cacc:
        case Term::Kind::fan: {
            Count inner = isolated_planar_count(t.children[0]);
            if (inner.infinite || inner.value > 0) return Count::inf();
            return Count::of(0);
        }
        case Term::Kind::ord: {
            Flag f0 = t.gspec.flag_at(Ordinal::zero());
            if (is_genus(f0)) return Count::of(0);
            return t.alpha.is_zero() ? Count::of(t.n) : Count::inf();
        }
    }
    return Count::of(0);
}

std::strong_ordering term_order(const Term& a, const Term& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    switch (a.kind) {
        case Term::Kind::pt:
        case Term::Kind::cantor:
            return static_cast<int>(a.flag) <=> static_cast<int>(b.flag);
        case Term::Kind::ord: {
            if (auto c = a.alpha <=> b.alpha; c != 0) return c;
            if (auto c = a.n <=> b.n; c != 0)
                return c == std::weak_ordering::less ? std::strong_ordering::less
                                                     : std::strong_ordering::greater;
            if (auto c = static_cast<int>(a.gspec.kind) <=> static_cast<int>(b.gspec.kind);
                c != 0)
                return c;
            if (a.gspec.kind == GenusSpec::Kind::at_least)
                return a.gspec.threshold <=> b.gspec.threshold;
            return std::strong_ordering::equal;
        }
        default: {
            if (auto c = a.children.size() <=> b.children.size(); c != 0)
                return c == std::weak_ordering::less ? std::strong_ordering::less
                                                     : std::strong_ordering::greater;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                if (auto c = term_order(a.children[i], b.children[i]); c != 0) return c;
            if (auto c = static_cast<int>(a.flag) <=> static_cast<int>(b.flag); c != 0)
                return c;
            if (auto c = static_cast<int>(a.flag2) <=> static_cast<int>(b.flag2); c != 0)
                return c;
            if (auto c = a.n <=> b.n; c != 0)
                return c == std::weak_ordering::less ? std::strong_ordering::less
                                                     : std::strong_ordering::greater;
            if (auto c = static_cast<int>(a.mult) <=> static_cast<int>(b.mult); c != 0)
                return c;
            return static_cast<int>(a.iflag) <=> static_cast<int>(b.iflag);
        }
    }
}

std::vector<Violation> validate(const Surface& s) {
    std::vector<Violation> out = validate(s.ends);
    bool genus_ends = has_genus_end(s.ends);
    if (s.infinite_genus() && !genus_ends)
        out.push_back({"surface", "infinite genus requires ends accumulated by genus"});
    if (!s.infinite_genus() && genus_ends)
        out.push_back({"surface", "finite genus is incompatible with genus-flagged ends"});
    return out;
}

bool is_infinite_type(const Surface& s) {
    return s.infinite_genus() || !is_finite_space(s.ends);
}

} // namespace endcb
