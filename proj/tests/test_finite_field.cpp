#include <random>
#include <set>

#include "doctest.h"
#include "galimage/primes.hpp"

using namespace galimage;

namespace {

ZPoly zp(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    return ZPoly(v);
}

// All prime powers q <= 121 with a field built on the default modulus.
std::vector<FiniteFieldPtr> small_fields() {
    std::vector<FiniteFieldPtr> out;
    for (std::uint64_t p : primes_up_to(121)) {
        std::uint64_t q = p;
        for (int d = 1; q <= 121; ++d, q *= p) out.push_back(FiniteField::of_degree(p, d));
    }
    return out;
}

}  // namespace

TEST_CASE("squares in small prime fields") {
    auto f7 = FiniteField::prime_field(7), f5 = FiniteField::prime_field(5);
    CHECK_FALSE(is_square_ff(f7->from_int(3)));
    CHECK(is_square_ff(f5->from_int(0)));
    CHECK(is_square_ff(f7->from_int(2)));
}

TEST_CASE("exhaustive field axioms for q <= 121" * doctest::description("property")) {
    for (const auto& f : small_fields()) {
        const std::uint64_t q = f->order().get_ui();
        std::set<std::uint64_t> squares;
        for (std::uint64_t i = 0; i < q; ++i) {
            FFElem x = f->from_index(i);
            CHECK(x.index() == i);
            // Frobenius fixed points: x^q = x.
            CHECK(x.pow(q) == x);
            CHECK(is_square_ff(x * x));
            squares.insert((x * x).index());
            if (!x.is_zero()) CHECK(x * x.inverse() == f->one());
        }
        // Independent count: (q+1)/2 squares for odd q, all of them for even q.
        std::uint64_t expected = (q % 2) ? (q + 1) / 2 : q;
        CHECK(squares.size() == expected);
        std::uint64_t nsq = 0;
        for (std::uint64_t i = 0; i < q; ++i) nsq += is_square_ff(f->from_index(i));
        CHECK(nsq == expected);
        CHECK(multiplicative_order(f->primitive_element()) == q - 1);
    }
}

TEST_CASE("embedding and roots") {
    auto f49 = FiniteField::of_degree(7, 2), f7_6 = FiniteField::of_degree(7, 6);
    auto emb = embed(f49, f7_6);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 40; ++i) {
        FFElem a = f49->from_index(rng() % 49), b = f49->from_index(rng() % 49);
        CHECK(emb(a * b) == emb(a) * emb(b));
        CHECK(emb(a + b) == emb(a) + emb(b));
    }
    CHECK(element_degree(emb(f49->gen())) == 2);
    // x^2 + 1 has two roots in F_49 but none in F_7.
    CHECK(roots(FFPoly::from_fp(f49, FpPoly(7, {1, 0, 1}))).size() == 2);
    CHECK(roots(FFPoly::from_fp(FiniteField::prime_field(7), FpPoly(7, {1, 0, 1}))).empty());
    auto f8 = FiniteField::of_degree(2, 3);
    CHECK(roots(FFPoly::from_fp(f8, f8->modulus())).size() == 3);
}

TEST_CASE("primes above in the cubic field") {
    auto k = NumberField::create(zp({1, -4, 1, 1}), "K");
    auto p7 = primes_above(k, 7);
    REQUIRE(p7.size() == 1);
    CHECK(p7[0].residue_degree == 3);
    auto p5 = primes_above(k, 5);
    REQUIRE(p5.size() == 3);
    for (auto& p : p5) CHECK(p.residue_degree == 1);
    auto q = NumberField::rationals();
    auto p11 = primes_above(q, 11);
    REQUIRE(p11.size() == 1);
    CHECK(p11[0].residue_degree == 1);
    CHECK(reduce_mod(q->from_rational(9), p11[0]).prime_field_value() == 9);
    CHECK(reduce_mod(BigRat(9), primes_above(q, 7)[0]).prime_field_value() == 2);
    auto p13 = primes_above(k, 13);
    REQUIRE(p13.size() == 1);
    CHECK(p13[0].ramification == 3);
    CHECK(reduce_mod(k->gen(), p13[0]).prime_field_value() == 4);
    CHECK_THROWS_AS(reduce_mod(k->from_rational(BigRat(1, 7)), p7[0]), std::domain_error);
}

TEST_CASE("splitting matches the mod-13 rule" * doctest::description("property")) {
    auto k = NumberField::create(zp({1, -4, 1, 1}), "K");
    for (std::uint64_t ell : primes_up_to(100)) {
        if (ell == 13) continue;
        auto ps = primes_above(k, ell);
        int total = 0;
        for (auto& p : ps) total += p.residue_degree * p.ramification;
        CHECK(total == 3);
        bool split = ps.size() == 3;
        std::uint64_t r = ell % 13;
        bool rule = r == 1 || r == 5 || r == 8 || r == 12;
        CHECK(split == rule);
        if (!rule) CHECK(ps.size() == 1);
    }
}

TEST_CASE("reduction is a ring homomorphism" * doctest::description("property")) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-30, 30);
    for (auto poly : {zp({1, -4, 1, 1}), zp({1, 0, 1}), zp({1, 0, 14, 0, 9, 0, 1})}) {
        auto k = NumberField::create(poly);
        for (std::uint64_t ell : {3ull, 7ull, 11ull, 29ull}) {
            for (auto& lam : primes_above(k, ell)) {
                for (int i = 0; i < 100; ++i) {
                    std::vector<BigRat> a, b;
                    for (int j = 0; j < k->degree(); ++j) {
                        a.emplace_back(d(rng));
                        b.emplace_back(d(rng));
                    }
                    NFElement x = k->from_coords(a), y = k->from_coords(b);
                    CHECK(reduce_mod(x * y, lam) == reduce_mod(x, lam) * reduce_mod(y, lam));
                    CHECK(reduce_mod(x + y, lam) == reduce_mod(x, lam) + reduce_mod(y, lam));
                }
            }
        }
    }
}

TEST_CASE("completion squares") {
    auto q = NumberField::rationals();
    auto lam7 = primes_above(q, 7)[0];
    auto r = valuation_and_square_in_completion(q->from_rational(9), lam7);
    CHECK(r.valuation == 0);
    CHECK(r.is_square);
    auto z = valuation_and_square_in_completion(q->from_rational(0), lam7);
    CHECK(z.is_square);
    CHECK(z.valuation == INT_MAX);
    CHECK_FALSE(valuation_and_square_in_completion(q->from_rational(3), lam7).is_square);
    CHECK_FALSE(valuation_and_square_in_completion(q->from_rational(7), lam7).is_square);
    CHECK(valuation_and_square_in_completion(q->from_rational(49 * 2), lam7).is_square);
    CHECK_THROWS_AS(valuation_and_square_in_completion(q->from_rational(3), primes_above(q, 2)[0]), std::domain_error);
    auto k = NumberField::create(zp({1, -4, 1, 1}), "K");
    NFElement b = k->gen();
    auto lam = primes_above(k, 7)[0];
    auto s = valuation_and_square_in_completion(b * b * BigRat(49), lam);
    CHECK(s.valuation == 2);
    CHECK(s.is_square);
    // Partially split prime with vanishing residue is unsupported.
    auto lam5 = primes_above(k, 5);
    NFElement vanish = b - k->from_rational(BigRat(BigInt(reduce_mod(b, lam5[0]).prime_field_value())));
    CHECK_THROWS_AS(valuation_and_square_in_completion(vanish, lam5[0]), std::domain_error);
}
