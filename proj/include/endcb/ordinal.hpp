#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace endcb {

struct OrdinalTerm;

// Countable ordinal below epsilon_0 in Cantor normal form:
//   w^e1*c1 + w^e2*c2 + ... + w^ek*ck   with e1 > e2 > ... > ek and ci >= 1.
// The empty term list is 0. Exponents are themselves ordinals of strictly
// smaller height, so structural recursion terminates.
class Ordinal {
public:
    Ordinal() = default;

    static Ordinal zero() { return Ordinal(); }
    static Ordinal nat(std::uint64_t n);
    static Ordinal omega();
    // w^e
    static Ordinal omega_pow(const Ordinal& e);
    // w^e * c; c = 0 yields 0.
    static Ordinal omega_pow_mul(const Ordinal& e, std::uint64_t c);

    const std::vector<OrdinalTerm>& terms() const { return terms_; }

    bool is_zero() const;
    // True iff the ordinal is a natural number (including 0).
    bool is_finite() const;
    // Value when is_finite(); throws std::domain_error otherwise.
    std::uint64_t finite_value() const;

    // A limit ordinal is nonzero with last CNF exponent > 0.
    bool is_limit() const;
    bool is_successor() const;

    Ordinal successor() const;
    // Defined only for successor ordinals; throws std::domain_error on 0 and limits.
    Ordinal predecessor() const;

    // k-th member (k >= 1) of the standard fundamental sequence of a limit
    // ordinal: approximations converging to *this from below.
    Ordinal fundamental(std::uint64_t k) const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

    // Ordinal sum in CNF: terms of `a` with exponent below lead(b) are
    // absorbed (e.g. 1 + w = w).
    friend Ordinal operator+(const Ordinal& a, const Ordinal& b);

    std::string str() const;

private:
    std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    std::uint64_t coeff = 1;
};

enum class Cmp { less, equal, greater };

// Three-way comparison as a named result.
Cmp compare(const Ordinal& a, const Ordinal& b);

} // namespace endcb
