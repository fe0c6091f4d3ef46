#include "endcb/ordinal.hpp"

#include <limits>
#include <stdexcept>

namespace endcb {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("ordinal coefficient overflow");
    return a + b;
}

} // namespace

Ordinal Ordinal::nat(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back({Ordinal(), n});
    return o;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e) { return omega_pow_mul(e, 1); }

Ordinal Ordinal::omega_pow_mul(const Ordinal& e, std::uint64_t c) {
    Ordinal o;
    if (c > 0) o.terms_.push_back({e, c});
    return o;
}

bool Ordinal::is_zero() const { return terms_.empty(); }

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
    if (terms_.empty()) return 0;
    if (!is_finite()) throw std::domain_error("not a finite ordinal");
    return terms_[0].coeff;
}

bool Ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
}

bool Ordinal::is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
}

Ordinal Ordinal::successor() const { return *this + nat(1); }

Ordinal Ordinal::predecessor() const {
    if (!is_successor())
        throw std::domain_error("predecessor of zero or a limit ordinal");
    Ordinal r = *this;
    if (r.terms_.back().coeff > 1)
        r.terms_.back().coeff -= 1;
    else
        r.terms_.pop_back();
    return r;
}

Ordinal Ordinal::fundamental(std::uint64_t k) const {
    if (!is_limit()) throw std::domain_error("fundamental sequence of a non-limit");
    if (k == 0) k = 1;
    Ordinal head = *this;
    OrdinalTerm last = head.terms_.back();
    head.terms_.pop_back();
    // Split off one w^e from the last term; approximate that single w^e.
    if (last.coeff > 1) {
        OrdinalTerm rest = last;
        rest.coeff -= 1;
        head.terms_.push_back(rest);
    }
    const Ordinal& e = last.exponent;
    Ordinal approx;
    if (e.is_successor()) {
        // w^(d+1)[k] = w^d * k
        approx = omega_pow_mul(e.predecessor(), k);
    } else {
        // w^e[k] = w^(e[k]) for limit e
        approx = omega_pow(e.fundamental(k));
    }
    return head + approx;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = a.terms_[i].exponent <=> b.terms_[i].exponent;
        if (c != std::strong_ordering::equal) return c;
        auto d = a.terms_[i].coeff <=> b.terms_[i].coeff;
        if (d != std::strong_ordering::equal)
            return d == std::weak_ordering::less ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    Ordinal r;
    const Ordinal& lead = b.terms_.front().exponent;
    // Keep the prefix of `a` with exponents >= lead(b); the rest is absorbed.
    std::size_t i = 0;
    while (i < a.terms_.size() && a.terms_[i].exponent > lead) {
        r.terms_.push_back(a.terms_[i]);
        ++i;
    }
    if (i < a.terms_.size() && a.terms_[i].exponent == lead) {
        OrdinalTerm merged = b.terms_.front();
        merged.coeff = checked_add(merged.coeff, a.terms_[i].coeff);
        r.terms_.push_back(merged);
    } else {
        r.terms_.push_back(b.terms_.front());
    }
    r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
    return r;
}

Cmp compare(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    if (c == std::strong_ordering::less) return Cmp::less;
    if (c == std::strong_ordering::greater) return Cmp::greater;
    return Cmp::equal;
}

std::string Ordinal::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const OrdinalTerm& t : terms_) {
        if (!first) out += "+";
        first = false;
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (t.exponent == nat(1)) {
            out += "w";
        } else if (t.exponent.is_finite() || t.exponent.terms().size() == 1) {
            // single CNF term: no parentheses needed unless it has a tail
            const OrdinalTerm& e = t.exponent.terms().front();
            if (t.exponent.terms().size() == 1 && e.coeff == 1)
                out += "w^" + t.exponent.str();
            else
                out += "w^(" + t.exponent.str() + ")";
        } else {
            out += "w^(" + t.exponent.str() + ")";
        }
        if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
    }
    return out;
}

} // namespace endcb
