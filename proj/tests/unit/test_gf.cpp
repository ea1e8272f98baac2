#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "mds22/gf.hpp"
#include "oracles.hpp"

using namespace mds22;

namespace {

const std::vector<unsigned> kSmallQ = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};

std::vector<int> odd_prime_powers_upto(int hi) {
    std::vector<int> out;
    for (int q : oracle::prime_powers(3, hi))
        if (q % 2 == 1) out.push_back(q);
    return out;
}

}  // namespace

TEST_CASE("fixed moduli for the named fields") {
    const std::map<unsigned, std::vector<unsigned>> expected = {
        {4, {1, 1, 1}},           // x^2+x+1
        {9, {1, 0, 1}},           // x^2+1
        {25, {2, 0, 1}},          // x^2+2
        {27, {1, 0, 2, 1}},       // x^3+2x^2+1
        {32, {1, 0, 1, 0, 0, 1}}, // x^5+x^2+1
        {81, {1, 0, 1, 1, 1}},    // x^4+x^3+x^2+1
    };
    for (const auto& [q, mod] : expected) {
        CAPTURE(q);
        const Field f = Field::of_order(q);
        CHECK(f.modulus() == mod);
        CHECK(f.q() == q);
    }
    const Field f9 = Field::make(3, 2);
    CHECK(f9.modulus() == std::vector<unsigned>{1, 0, 1});
    const Field f2 = Field::make(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.m() == 1);
}

TEST_CASE("default modulus is the lexicographically smallest irreducible") {
    // Fields without a fixed modulus: compare against trial division over
    // every monic polynomial in constant-term-first lexicographic order.
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {2, 6}, {7, 2}, {5, 3}, {11, 2}, {2, 7}, {3, 5}}) {
        CAPTURE(p);
        CAPTURE(m);
        std::uint64_t count = 1;
        for (unsigned i = 0; i < m; ++i) count *= p;
        std::vector<unsigned> want;
        for (std::uint64_t k = 0; k < count && want.empty(); ++k) {
            std::vector<unsigned> f(m + 1, 0);
            f[m] = 1;
            std::uint64_t t = k;
            for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
                f[static_cast<std::size_t>(i)] = static_cast<unsigned>(t % p);
                t /= p;
            }
            if (oracle::irreducible_by_trial(p, f)) want = f;
        }
        CHECK(Field::make(p, m).modulus() == want);
    }
}

TEST_CASE("field construction errors") {
    CHECK_ERRC(Field::make(4, 1), Errc::NotPrime);
    CHECK_ERRC(Field::make(2, 17), Errc::FieldTooLarge);
    CHECK_ERRC(Field::make(2, 2, std::vector<unsigned>{1, 0, 1}), Errc::NotIrreducible);  // (x+1)^2
    CHECK_ERRC(Field::make(3, 2, std::vector<unsigned>{1, 0, 2}), Errc::NotIrreducible);  // not monic
    CHECK_ERRC(Field::of_order(6), Errc::NotPrime);
    CHECK_NOTHROW(Field::make(2, 16));
    CHECK_NOTHROW(Field::make(2, 2, std::vector<unsigned>{1, 1, 1}));
}

TEST_CASE("multiplication matches schoolbook polynomial arithmetic") {
    for (unsigned q : {2u, 3u, 4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u}) {
        CAPTURE(q);
        const Field f = Field::of_order(q);
        const oracle::PolyField g(f.p(), f.modulus());
        REQUIRE(oracle::irreducible_by_trial(f.p(), f.modulus()));
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) {
                if (f.mul(a, b) != g.mul(a, b) || f.add(a, b) != g.add(a, b)) {
                    FAIL_CHECK("mismatch at " << a << "," << b);
                    return;
                }
            }
    }
}

TEST_CASE("large fields without tables agree with the oracle on samples") {
    std::mt19937_64 rng(7);
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 13}, {3, 8}, {2, 16}, {5, 5}, {257, 1}}) {
        const Field f = Field::make(p, m);
        const oracle::PolyField g(p, f.modulus());
        std::uniform_int_distribution<Elem> d(0, f.q() - 1);
        for (int k = 0; k < 2000; ++k) {
            const Elem a = d(rng), b = d(rng);
            REQUIRE(f.mul(a, b) == g.mul(a, b));
            REQUIRE(f.sub(a, b) == g.sub(a, b));
            if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("field axioms hold exhaustively for q <= 32") {
    for (unsigned q : kSmallQ) {
        CAPTURE(q);
        const Field f = Field::of_order(q);
        bool ok = true;
        for (Elem a = 0; a < q && ok; ++a) {
            ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
            if (a != 0) ok &= f.mul(a, f.inv(a)) == 1;
            for (Elem b = 0; b < q && ok; ++b) {
                ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                ok &= f.sub(f.add(a, b), b) == a;
                if (b != 0) ok &= f.mul(f.div(a, b), b) == a;
                for (Elem c = 0; c < q && ok; ++c) {
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("named products") {
    // omega^2 + 1 = 0 in GF(9): omega is encoded as 3.
    const Field f9 = Field::of_order(9);
    CHECK(f9.mul(3, 3) == 2);
    // alpha^5 + alpha^2 + 1 = 0 in GF(32): alpha^4 * alpha = alpha^2 + 1.
    const Field f32 = Field::of_order(32);
    CHECK(f32.mul(16, 2) == 5);
    CHECK(f32.pow(2, 5) == 5);
    for (Elem a = 0; a < 32; ++a) CHECK(f32.add(a, 0) == a);
}

TEST_CASE("GFElem wrapper") {
    const Field f7 = Field::of_order(7);
    const GFElem a(f7, 3), b(f7, 5);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((a / b).value() == f7.mul(3, f7.inv(5)));
    CHECK((-a).value() == 4);
    CHECK(a.inv().value() == 5);
    CHECK(a.pow(6).value() == 1);
    CHECK_ERRC(GFElem(f7, 0).inv(), Errc::DivisionByZero);
    CHECK_ERRC(a / GFElem(f7, 0), Errc::DivisionByZero);
    const GFElem c(Field::of_order(5), 1);
    CHECK_ERRC(a + c, Errc::FieldMismatch);
    CHECK_ERRC(GFElem(f7, 7), Errc::InvalidArgument);
    // Separately constructed contexts with the same modulus interoperate.
    CHECK_NOTHROW(a + GFElem(Field::of_order(7), 1));
}

TEST_CASE("absolute trace") {
    const Field f4 = Field::of_order(4);
    CHECK(f4.abs_trace(0) == 0);
    CHECK(f4.abs_trace(2) == 1);  // omega
    const Field f32 = Field::of_order(32);
    CHECK(f32.abs_trace(f32.inv(2)) == 0);  // Tr(1/alpha)

    for (int q : oracle::prime_powers(2, 81)) {
        CAPTURE(q);
        const Field f = Field::of_order(static_cast<unsigned>(q));
        const oracle::PolyField g(f.p(), f.modulus());
        for (Elem a = 0; a < f.q(); ++a) {
            // Direct Frobenius sum with the oracle field.
            Elem t = 0, x = a;
            for (unsigned i = 0; i < f.m(); ++i) {
                t = g.add(t, x);
                x = g.pow(x, f.p());
            }
            REQUIRE(f.abs_trace(a) == t);
            REQUIRE(t < f.p());
            REQUIRE(f.abs_trace(f.pow(a, f.p())) == t);
            for (Elem b : {Elem{1}, f.q() - 1})
                REQUIRE(f.abs_trace(f.add(a, b)) == f.add(t, f.abs_trace(b)));
        }
    }
}

TEST_CASE("quadratic character") {
    const Field f7 = Field::of_order(7);
    CHECK(f7.is_square(1));
    CHECK_FALSE(f7.is_square(3));
    CHECK(f7.is_square(2));
    CHECK_ERRC(Field::of_order(8).is_square(3), Errc::EvenCharacteristic);
    CHECK_ERRC(f7.is_square(0), Errc::ZeroInput);

    for (int q : odd_prime_powers_upto(81)) {
        CAPTURE(q);
        const Field f = Field::of_order(static_cast<unsigned>(q));
        std::set<Elem> squares;
        for (Elem b = 1; b < f.q(); ++b) squares.insert(f.mul(b, b));
        int count = 0;
        for (Elem a = 1; a < f.q(); ++a) {
            REQUIRE(f.is_square(a) == (squares.count(a) == 1));
            count += f.is_square(a);
        }
        CHECK(count == (q - 1) / 2);
    }
}

TEST_CASE("square roots and quadratic roots against brute force") {
    for (unsigned q : kSmallQ) {
        CAPTURE(q);
        const Field f = Field::of_order(q);
        for (Elem a = 0; a < q; ++a) {
            const auto r = f.sqrt(a);
            bool exists = false;
            for (Elem b = 0; b < q; ++b) exists |= f.mul(b, b) == a;
            REQUIRE(r.has_value() == exists);
            if (r) REQUIRE(f.mul(*r, *r) == a);
        }
        std::mt19937_64 rng(q);
        std::uniform_int_distribution<Elem> d(0, q - 1);
        for (int k = 0; k < 300; ++k) {
            const Elem a = std::max<Elem>(1, d(rng)), b = d(rng), c = d(rng);
            std::vector<Elem> want;
            for (Elem x = 0; x < q; ++x)
                if (f.add(f.add(f.mul(a, f.mul(x, x)), f.mul(b, x)), c) == 0) want.push_back(x);
            REQUIRE(f.quadratic_roots(a, b, c) == want);
        }
    }
    CHECK_ERRC(Field::of_order(5).quadratic_roots(0, 1, 1), Errc::InvalidArgument);
}

TEST_CASE("primitive elements") {
    CHECK(Field::of_order(2).primitive_element() == 1);
    CHECK(Field::of_order(5).primitive_element() == 2);
    const Field f9 = Field::of_order(9);
    const Elem g = f9.primitive_element();
    CHECK(f9.order(g) == 8);
    CHECK(f9.order(3) == 4);  // omega itself
    CHECK(g != 3);
    for (int q : oracle::prime_powers(2, 81)) {
        CAPTURE(q);
        const Field f = Field::of_order(static_cast<unsigned>(q));
        const oracle::PolyField o(f.p(), f.modulus());
        // Smallest encoding whose powers 1..q-2 avoid 1.
        Elem want = 0;
        for (Elem a = 1; a < f.q() && want == 0; ++a) {
            Elem x = a;
            unsigned k = 1;
            while (x != 1) {
                x = o.mul(x, a);
                ++k;
            }
            if (k == f.q() - 1) want = a;
        }
        CHECK(f.primitive_element() == want);
        CHECK(f.order(want) == f.q() - 1);
    }
}

TEST_CASE("number theory helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(65537));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(prime_power(81) == std::make_pair(3u, 4u));
    CHECK(prime_power(64) == std::make_pair(2u, 6u));
    CHECK_FALSE(prime_power(12).has_value());
    CHECK_FALSE(prime_power(1).has_value());
    CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(is_irreducible(2, {1, 1, 1}));
    CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
    CHECK(is_irreducible(3, {1, 0, 2, 1}));
}

TEST_CASE("quadratic extensions have a primitive element of order q^2-1") {
    for (int q : oracle::prime_powers(2, 81)) {
        CAPTURE(q);
        const QuadExt e(Field::of_order(static_cast<unsigned>(q)));
        const std::uint32_t g = e.primitive_element();
        CHECK(e.order(g) == static_cast<std::uint64_t>(q) * q - 1);
        // y is a root of y^2 - s1 y - s0.
        const std::uint32_t y = e.pack(0, 1);
        CHECK(e.mul(y, y) == e.pack(e.s0(), e.s1()));
        for (std::uint32_t a = 1; a < e.size(); a += 7) CHECK(e.mul(a, e.inv(a)) == 1);
    }
}
