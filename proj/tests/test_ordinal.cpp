#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endcb/ordinal.hpp"
#include "endcb/parser.hpp"

#include <array>

using namespace endcb;

namespace {

Ordinal O(const std::string& s) { return parse_ordinal(s); }

// Naive independent model of ordinals below w^4: tuples (c3, c2, c1, c0)
// denoting w^3*c3 + w^2*c2 + w*c1 + c0, with hand-rolled comparison and sum.
using Tup = std::array<std::uint64_t, 4>;

int tup_cmp(const Tup& a, const Tup& b) {
    for (int i = 0; i < 4; ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

Tup tup_add(const Tup& a, const Tup& b) {
    // position of b's leading nonzero component
    int lead = 4;
    for (int i = 0; i < 4; ++i)
        if (b[i] != 0) {
            lead = i;
            break;
        }
    if (lead == 4) return a;
    Tup r{0, 0, 0, 0};
    for (int i = 0; i < lead; ++i) r[i] = a[i];
    r[lead] = a[lead] + b[lead];
    for (int i = lead + 1; i < 4; ++i) r[i] = b[i];
    return r;
}

Ordinal tup_to_ordinal(const Tup& t) {
    Ordinal r;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t c = t[i];
        if (c == 0) continue;
        r = r + Ordinal::omega_pow_mul(Ordinal::nat(static_cast<std::uint64_t>(3 - i)), c);
    }
    return r;
}

} // namespace

TEST_CASE("comparison basics") {
    CHECK(compare(O("w"), O("w")) == Cmp::equal);
    CHECK(compare(O("w^2*3+w"), O("w^2*3+w*2")) == Cmp::less);
    CHECK(compare(O("w^w"), O("w^2*9+7")) == Cmp::greater);
    CHECK(O("0") < O("1"));
    CHECK(O("w+1") < O("w*2"));
    CHECK(O("w^(w+1)") > O("w^w*5+w^2"));
}

TEST_CASE("addition absorption") {
    CHECK(O("1") + O("w") == O("w"));
    CHECK(O("w") + O("1") == O("w+1"));
    CHECK(O("w^2+w") + O("w^2") == O("w^2*2"));
    CHECK(O("w*3+2") + O("w") == O("w*4"));
    CHECK(O("w^w") + O("0") == O("w^w"));
    CHECK(O("0") + O("w^w") == O("w^w"));
}

TEST_CASE("limits, successors, predecessors") {
    CHECK(O("w").is_limit());
    CHECK_FALSE(O("w+1").is_limit());
    CHECK(O("w+1").predecessor() == O("w"));
    CHECK(O("w^w*2").is_limit());
    CHECK_FALSE(O("0").is_limit());
    CHECK_FALSE(O("0").is_successor());
    CHECK_THROWS_AS(O("0").predecessor(), std::domain_error);
    CHECK_THROWS_AS(O("w").predecessor(), std::domain_error);
    CHECK(O("17").predecessor() == O("16"));
    CHECK(O("w^2+w").successor() == O("w^2+w+1"));
}

TEST_CASE("fundamental sequences approach the limit from below") {
    Ordinal w = O("w");
    for (std::uint64_t k = 1; k < 6; ++k) {
        CHECK(w.fundamental(k) == Ordinal::nat(k));
        CHECK(w.fundamental(k) < w);
    }
    CHECK(O("w^2").fundamental(3) == O("w*3"));
    CHECK(O("w^w").fundamental(3) == O("w^3"));
    CHECK(O("w*2").fundamental(4) == O("w+4"));
    CHECK(O("w^(w+1)").fundamental(2) == O("w^w*2"));
}

TEST_CASE("exhaustive agreement with the naive tuple model below w^4") {
    // all tuples with entries <= 5
    std::vector<Tup> tuples;
    for (std::uint64_t a = 0; a <= 5; ++a)
        for (std::uint64_t b = 0; b <= 5; ++b)
            for (std::uint64_t c = 0; c <= 5; ++c)
                for (std::uint64_t d = 0; d <= 5; ++d) tuples.push_back({a, b, c, d});
    std::size_t checked = 0;
    for (const Tup& x : tuples) {
        Ordinal ox = tup_to_ordinal(x);
        for (const Tup& y : tuples) {
            Ordinal oy = tup_to_ordinal(y);
            int c = tup_cmp(x, y);
            Cmp got = compare(ox, oy);
            REQUIRE(((c < 0 && got == Cmp::less) || (c == 0 && got == Cmp::equal) ||
                     (c > 0 && got == Cmp::greater)));
            REQUIRE(ox + oy == tup_to_ordinal(tup_add(x, y)));
            ++checked;
        }
    }
    CHECK(checked == tuples.size() * tuples.size());
}

TEST_CASE("addition is associative on sampled ordinals") {
    std::vector<Ordinal> xs = {O("0"),    O("1"),      O("5"),     O("w"),
                               O("w+3"),  O("w*2"),    O("w^2"),   O("w^2+w+1"),
                               O("w^w"),  O("w^w*2+w"), O("w^3*4"), O("w^(w+1)+w^2*2")};
    for (const Ordinal& a : xs)
        for (const Ordinal& b : xs)
            for (const Ordinal& c : xs) CHECK((a + b) + c == a + (b + c));
}

TEST_CASE("identity and monotonicity laws") {
    std::vector<Ordinal> xs = {O("0"), O("2"), O("w"), O("w+1"), O("w^2*2"), O("w^w")};
    for (const Ordinal& a : xs) {
        CHECK(a + Ordinal::zero() == a);
        CHECK(Ordinal::zero() + a == a);
        for (const Ordinal& b : xs) {
            if (!b.is_zero()) CHECK(a + b >= a);
        }
    }
}

TEST_CASE("printing round trips through the parser") {
    for (const char* s : {"0", "7", "w", "w+1", "w*3", "w^2*2+w+5", "w^w",
                          "w^w*2+w+3", "w^(w+1)", "w^(w^2+1)*3+w^4"}) {
        Ordinal o = O(s);
        CHECK(parse_ordinal(o.str()) == o);
    }
}

TEST_CASE("coefficient overflow is an error") {
    Ordinal big = Ordinal::omega_pow_mul(Ordinal::nat(1), ~std::uint64_t{0});
    CHECK_THROWS_AS(big + big, std::overflow_error);
}
