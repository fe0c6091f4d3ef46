#include "endcb/parser.hpp"

#include <cctype>
#include <limits>

namespace endcb {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }

    bool try_keyword(const std::string& kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) != 0) return false;
        // keywords must not run into a longer identifier
        std::size_t after = pos_ + kw.size();
        if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) ||
                                     text_[after] == '_'))
            return false;
        pos_ = after;
        return true;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    std::uint64_t nat() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected number");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                fail("number too large");
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    [[noreturn]] void fail(const std::string& message) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(message, line, col);
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

Ordinal parse_ordinal_at(Cursor& cur);

// part := ("w" ["^" oexp]) ["*" nat] | nat
Ordinal parse_ordinal_part(Cursor& cur) {
    if (cur.try_keyword("w")) {
        Ordinal exp = Ordinal::nat(1);
        if (cur.try_consume('^')) {
            if (cur.try_consume('(')) {
                exp = parse_ordinal_at(cur);
                cur.expect(')');
            } else if (cur.try_keyword("w")) {
                // shorthand w^w, optionally w^w^w...
                Ordinal inner = Ordinal::nat(1);
                if (cur.try_consume('^')) {
                    if (cur.try_consume('(')) {
                        inner = parse_ordinal_at(cur);
                        cur.expect(')');
                    } else if (cur.try_keyword("w")) {
                        inner = Ordinal::omega();
                    } else {
                        inner = Ordinal::nat(cur.nat());
                    }
                }
                exp = Ordinal::omega_pow(inner);
            } else {
                exp = Ordinal::nat(cur.nat());
            }
        }
        std::uint64_t coeff = 1;
        if (cur.try_consume('*')) coeff = cur.nat();
        if (coeff == 0) cur.fail("ordinal coefficient must be positive");
        return Ordinal::omega_pow_mul(exp, coeff);
    }
    return Ordinal::nat(cur.nat());
}

Ordinal parse_ordinal_at(Cursor& cur) {
    Ordinal result = parse_ordinal_part(cur);
    while (cur.try_consume('+')) result = result + parse_ordinal_part(cur);
    return result;
}

std::optional<Flag> try_parse_flag(Cursor& cur) {
    if (cur.try_keyword("g")) return Flag::genus;
    if (cur.try_consume('!')) {
        if (!cur.try_keyword("g")) cur.fail("expected 'g' after '!'");
        return Flag::planar;
    }
    return std::nullopt;
}

Term parse_term_at(Cursor& cur) {
    std::string head = cur.ident();
    if (head == "pt") {
        return pt(try_parse_flag(cur).value_or(Flag::planar));
    }
    if (head == "cantor") {
        return cantor(try_parse_flag(cur).value_or(Flag::planar));
    }
    if (head == "sum") {
        cur.expect('(');
        std::vector<Term> children;
        children.push_back(parse_term_at(cur));
        while (cur.try_consume(',')) children.push_back(parse_term_at(cur));
        cur.expect(')');
        if (children.size() < 2) cur.fail("sum requires at least two children");
        return sum(std::move(children));
    }
    if (head == "omega") {
        cur.expect('(');
        Term child = parse_term_at(cur);
        std::optional<Flag> f;
        if (cur.try_consume(',')) {
            f = try_parse_flag(cur);
            if (!f) cur.fail("expected flag");
        }
        cur.expect(')');
        return omega_term(std::move(child), f);
    }
    if (head == "line") {
        cur.expect('(');
        Term child = parse_term_at(cur);
        std::optional<Flag> f1, f2;
        if (cur.try_consume(',')) {
            f1 = try_parse_flag(cur);
            if (!f1) cur.fail("expected flag");
            cur.expect(',');
            f2 = try_parse_flag(cur);
            if (!f2) cur.fail("expected flag");
        }
        cur.expect(')');
        return line(std::move(child), f1, f2);
    }
    if (head == "cacc") {
        cur.expect('(');
        Term child = parse_term_at(cur);
        std::optional<Flag> f;
        if (cur.try_consume(',')) {
            f = try_parse_flag(cur);
            if (!f) cur.fail("expected flag");
        }
        cur.expect(')');
        return cacc(std::move(child), f);
    }
    if (head == "ord") {
        cur.expect('(');
        Ordinal a = parse_ordinal_at(cur);
        cur.expect(',');
        std::uint64_t n = cur.nat();
        GenusSpec g = GenusSpec::none();
        if (cur.try_consume(',')) {
            if (cur.try_keyword("none")) {
                g = GenusSpec::none();
            } else if (cur.try_keyword("all")) {
                g = GenusSpec::all();
            } else if (cur.try_keyword("ge")) {
                cur.expect('(');
                g = GenusSpec::at_least(parse_ordinal_at(cur));
                cur.expect(')');
            } else {
                cur.fail("expected genus spec: none, all or ge(<ordinal>)");
            }
        }
        cur.expect(')');
        return ord_term(std::move(a), n, g);
    }
    if (head == "fan") {
        cur.expect('(');
        if (!cur.try_keyword("iter")) cur.fail("expected iter(...) schema");
        cur.expect('(');
        Term base = parse_term_at(cur);
        cur.expect(')');
        cur.expect(',');
        int accum = 0;
        if (cur.try_keyword("one"))
            accum = 1;
        else if (cur.try_keyword("two"))
            accum = 2;
        else
            cur.fail("expected 'one' or 'two'");
        std::optional<Flag> f1 = try_parse_flag(cur);
        std::optional<Flag> f2;
        if (accum == 2 && f1) {
            f2 = try_parse_flag(cur);
            if (!f2) cur.fail("expected second flag");
        }
        FanMult mult = FanMult::once;
        if (cur.try_consume(',')) {
            if (cur.try_keyword("rep"))
                mult = FanMult::repeated;
            else if (cur.try_keyword("once"))
                mult = FanMult::once;
            else
                cur.fail("expected 'rep' or 'once'");
        }
        cur.expect(')');
        return fan(std::move(base), accum, f1, f2, mult);
    }
    cur.fail("unknown term constructor '" + head + "'");
}

std::string flag_str(Flag f) { return is_genus(f) ? "g" : "!g"; }

} // namespace

Surface parse_surface(const std::string& text) {
    Cursor cur(text);
    if (!cur.try_keyword("surface")) cur.fail("expected 'surface'");
    if (!cur.try_keyword("genus")) cur.fail("expected 'genus='");
    cur.expect('=');
    std::optional<std::uint64_t> genus;
    if (cur.try_keyword("inf"))
        genus = std::nullopt;
    else
        genus = cur.nat();
    if (!cur.try_keyword("ends")) cur.fail("expected 'ends='");
    cur.expect('=');
    Term ends = parse_term_at(cur);
    if (!cur.eof()) cur.fail("trailing input");
    return Surface{genus, std::move(ends)};
}

Term parse_term(const std::string& text) {
    Cursor cur(text);
    Term t = parse_term_at(cur);
    if (!cur.eof()) cur.fail("trailing input");
    return t;
}

Ordinal parse_ordinal(const std::string& text) {
    Cursor cur(text);
    Ordinal o = parse_ordinal_at(cur);
    if (!cur.eof()) cur.fail("trailing input");
    return o;
}

std::string print(const Term& t) {
    switch (t.kind) {
        case Term::Kind::pt:
            return is_genus(t.flag) ? "pt g" : "pt";
        case Term::Kind::cantor:
            return is_genus(t.flag) ? "cantor g" : "cantor";
        case Term::Kind::sum: {
            std::string out = "sum(";
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out += ", ";
                out += print(t.children[i]);
            }
            return out + ")";
        }
        case Term::Kind::omega: {
            std::string out = "omega(" + print(t.children[0]);
            if (t.flag != forced_limit_flag(t.children[0])) out += ", " + flag_str(t.flag);
            return out + ")";
        }
        case Term::Kind::line: {
            Flag forced = forced_limit_flag(t.children[0]);
            std::string out = "line(" + print(t.children[0]);
            if (t.flag != forced || t.flag2 != forced)
                out += ", " + flag_str(t.flag) + ", " + flag_str(t.flag2);
            return out + ")";
        }
        case Term::Kind::cacc: {
            std::string out = "cacc(" + print(t.children[0]);
            if (t.flag != forced_limit_flag(t.children[0])) out += ", " + flag_str(t.flag);
            return out + ")";
        }
        case Term::Kind::ord: {
            std::string out = "ord(" + t.alpha.str() + ", " + std::to_string(t.n);
            switch (t.gspec.kind) {
                case GenusSpec::Kind::none: break;
                case GenusSpec::Kind::all: out += ", all"; break;
                case GenusSpec::Kind::at_least:
                    out += ", ge(" + t.gspec.threshold.str() + ")";
                    break;
            }
            return out + ")";
        }
        case Term::Kind::fan: {
            Flag forced = forced_limit_flag(t.children[0]);
            std::string out = "fan(iter(" + print(t.children[0]) + "), ";
            out += t.n == 1 ? "one" : "two";
            bool flags_needed = t.flag != forced || (t.n == 2 && t.flag2 != forced);
            if (flags_needed) {
                out += " " + flag_str(t.flag);
                if (t.n == 2) out += " " + flag_str(t.flag2);
            }
            if (t.mult == FanMult::repeated) out += ", rep";
            return out + ")";
        }
    }
    return "";
}

std::string print(const Surface& s) {
    std::string out = "surface genus=";
    out += s.infinite_genus() ? "inf" : std::to_string(*s.genus);
    out += " ends=" + print(s.ends);
    return out;
}

} // namespace endcb
