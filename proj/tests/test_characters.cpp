#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "galimage/characters.hpp"

using namespace galimage;

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-3, 7) == 1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-5, 3) == 1);
    CHECK(kronecker(-20, 3) == 1);
    CHECK(kronecker(-20, 7) == 1);
    CHECK(kronecker(-20, 11) == -1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-1, 0) == 1);
}

TEST_CASE("kronecker agrees with Euler's criterion" * doctest::description("property")) {
    for (std::uint64_t p : primes_up_to(200)) {
        if (p == 2) continue;
        for (std::int64_t a = -250; a <= 250; ++a) {
            std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
            std::uint64_t e = powmod_u64(r, (p - 1) / 2, p);
            int euler = r == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, static_cast<std::int64_t>(p)) == euler);
        }
    }
}

TEST_CASE("kronecker is completely multiplicative" * doctest::description("property")) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 401) - 200;
        std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 300), n = 1 + static_cast<std::int64_t>(rng() % 300);
        CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
        std::int64_t b = static_cast<std::int64_t>(rng() % 401) - 200;
        if (a != 0 || b != 0) CHECK(kronecker(a * b, m) == kronecker(a, m) * kronecker(b, m));
    }
}

TEST_CASE("unit group structure is exhaustive up to 10^4" * doctest::description("property")) {
    for (std::uint64_t m = 1; m <= 10000; ++m) {
        UnitGroupStructure g(m);
        REQUIRE(g.group_order() == euler_phi(m));
        std::set<std::vector<std::uint64_t>> seen;
        for (std::uint64_t a = 1; a <= m; ++a) {
            if (gcd_u64(a, m) != 1) continue;
            auto e = g.exponents(static_cast<std::int64_t>(a));
            // Rebuild a from the exponent vector.
            std::uint64_t v = 1 % m;
            for (std::size_t i = 0; i < e.size(); ++i) v = mulmod_u64(v, powmod_u64(g.generators()[i], e[i], m), m);
            if (v != a % m) {
                FAIL("exponent vector does not reproduce " << a << " mod " << m);
            }
            seen.insert(e);
        }
        if (seen.size() != euler_phi(m)) FAIL("exponent vectors not unique mod " << m);
    }
}

TEST_CASE("quadratic character counts") {
    CHECK(enumerate_quadratic_chars(3).size() == 1);
    CHECK(enumerate_quadratic_chars(40).size() == 7);
    CHECK(enumerate_quadratic_chars(120).size() == 15);
    CHECK(enumerate_quadratic_chars(2).empty());
    // Independent count: number of order-dividing-2 homomorphisms is #(G/G^2) = #{x : x^2 = 1}.
    for (std::uint64_t m : {3ull, 40ull, 120ull, 189ull, 640ull}) {
        std::uint64_t inv = 0;
        for (std::uint64_t a = 1; a < m; ++a)
            if (gcd_u64(a, m) == 1 && mulmod_u64(a, a, m) == 1) ++inv;
        CHECK(enumerate_quadratic_chars(m).size() + 1 == inv);
    }
}

TEST_CASE("character values") {
    auto eps27 = QuadChar::from_kronecker(-3, 27);
    CHECK(eps27.value(5) == -1);
    CHECK(eps27.value(1) == 1);
    CHECK(eps27.value(3) == 0);
    CHECK(eps27.conductor() == 3);
    auto eps160 = QuadChar::from_kronecker(-20, 160);
    CHECK(eps160.value(3) == 1);
    CHECK(eps160.conductor() == 20);
    auto f = FiniteField::prime_field(7);
    for (const auto& chi : enumerate_ff_chars(27, f)) {
        CHECK(chi.value(1).is_one());
        CHECK_THROWS_AS(chi.value(3), std::domain_error);
    }
}

TEST_CASE("characters are multiplicative" * doctest::description("property")) {
    std::mt19937_64 rng(8);
    for (std::uint64_t m = 1; m <= 1000; m += 37) {
        auto chars = enumerate_quadratic_chars(m);
        for (const auto& chi : chars) {
            for (int i = 0; i < 20; ++i) {
                std::int64_t a = static_cast<std::int64_t>(rng() % 5000), b = static_cast<std::int64_t>(rng() % 5000);
                if (std::gcd(static_cast<std::uint64_t>(a), m) != 1 || std::gcd(static_cast<std::uint64_t>(b), m) != 1) continue;
                CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
            }
        }
        auto f = FiniteField::of_degree(11, 2);
        for (const auto& chi : enumerate_ff_chars(m, f)) {
            std::int64_t a = static_cast<std::int64_t>(rng() % 5000), b = static_cast<std::int64_t>(rng() % 5000);
            if (std::gcd(static_cast<std::uint64_t>(a), m) != 1 || std::gcd(static_cast<std::uint64_t>(b), m) != 1) continue;
            CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
        }
    }
}

TEST_CASE("finite-field character counts") {
    CHECK(enumerate_ff_chars(27, FiniteField::of_degree(7, 2)).size() == 6);
    CHECK(enumerate_ff_chars(27, FiniteField::of_degree(11, 2)).size() == 6);
    auto triv = enumerate_ff_chars(2, FiniteField::prime_field(5));
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].is_trivial());
    // Distinct characters give distinct value tables.
    auto f = FiniteField::of_degree(5, 2);
    auto chars = enumerate_ff_chars(160, f);
    std::set<std::vector<std::uint64_t>> tables;
    for (const auto& chi : chars) {
        std::vector<std::uint64_t> t;
        for (std::int64_t a = 1; a < 160; a += 2)
            if (a % 5) t.push_back(chi.value(a).index());
        tables.insert(t);
    }
    CHECK(tables.size() == chars.size());
}

TEST_CASE("3, 7 and 11 separate the quadratic characters mod 40") {
    for (const auto& chi : enumerate_quadratic_chars(40)) {
        bool hit = chi.value(3) == -1 || chi.value(7) == -1 || chi.value(11) == -1;
        CHECK(hit);
    }
}
