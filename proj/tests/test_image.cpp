#include "doctest.h"
#include "galimage/image.hpp"

using namespace galimage;

namespace {

const KLProfile& prof27() {
    static const KLProfile p = analyze(builtin_form("level27"));
    return p;
}

const KLProfile& prof160() {
    static const KLProfile p = analyze(builtin_form("level160"));
    return p;
}

ZPoly zp(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    return ZPoly(v);
}

}  // namespace

TEST_CASE("K for level 27 is Q") {
    const auto& p = prof27();
    CHECK(p.k_degree == 1);
    CHECK(p.M == 27);
    CHECK(p.generating_primes == std::vector<std::uint64_t>{2});
    CHECK(p.L_equals_K);
    CHECK(p.degree_stable);
    CHECK(p.r_in_K(5) == p.K->from_rational(9));
}

TEST_CASE("K for level 160 is the cubic subfield of Q(zeta_13)") {
    const auto& p = prof160();
    CHECK(p.k_degree == 3);
    CHECK(p.generator_prime == 3);
    CHECK(p.M == 640);
    CHECK(p.L_equals_K);
    // x^3 + x^2 - 4x + 1 has a root in K.
    CHECK(roots_in_field(NFPoly::from_qpoly(p.K, to_qpoly(zp({1, -4, 1, 1})))).size() == 3);
    for (std::uint64_t q : {3, 7, 11}) {
        CHECK_FALSE(p.r_in_K(q).is_rational());
        auto s = sqrt_in_field(p.r_in_K(q));
        REQUIRE(s.has_value());
        CHECK(*s * *s == p.r_in_K(q));
    }
    for (std::size_t i = 0; i < p.sqrt_witnesses.size(); ++i)
        CHECK(p.sqrt_witnesses[i] * p.sqrt_witnesses[i] == p.r_in_K(p.generating_primes[i]));
}

TEST_CASE("generating primes") {
    CHECK(choose_generating_primes(builtin_form("level160"), 40) == std::vector<std::uint64_t>{3, 7, 11});
    CHECK(choose_generating_primes(builtin_form("level27"), 27) == std::vector<std::uint64_t>{2});
    CHECK(choose_generating_primes(builtin_form("level27"), 2).empty());
    // Closure check on the profile output.
    for (const auto* p : {&prof27(), &prof160()}) {
        auto sub = generated_subgroup(p->generating_primes, p->M);
        for (std::uint64_t a = 1; a < p->M; ++a)
            if (gcd_u64(a, p->M) == 1) CHECK(sub[a]);
    }
}

TEST_CASE("find_K errors on empty samples") {
    NewformRecord rec = level27_record(30);
    rec.level = 6469693230ull;  // primorial of 29
    CHECK_THROWS_WITH_AS(find_K(rec, 30), doctest::Contains("insufficient coefficients"), DataError);
}

TEST_CASE("cubic splitting follows the mod-13 rule" * doctest::description("property")) {
    const auto& p = prof160();
    for (std::uint64_t ell : primes_up_to(100)) {
        if (ell == 13) continue;
        auto lams = primes_of_K(p, ell);
        const std::uint64_t r = ell % 13;
        const bool split = r == 1 || r == 5 || r == 8 || r == 12;
        CHECK(lams.size() == (split ? 3u : 1u));
        for (const auto& lam : lams) CHECK(lam.residue_degree == (split ? 1 : 3));
    }
}

TEST_CASE("global square witnesses agree with completion tests" * doctest::description("property")) {
    for (const auto* p : {&prof27(), &prof160()}) {
        KLProfile local = *p;
        local.L_equals_K = false;
        for (std::uint64_t ell : primes_up_to(50)) {
            if (ell == 2) continue;
            for (const auto& lam : primes_of_K(*p, ell)) {
                CHECK(L_splitting_test(*p, lam));
                bool ok = true;
                try {
                    ok = L_splitting_test(local, lam);
                } catch (const std::domain_error&) {
                    continue;  // r_p vanishing at a split prime
                }
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("synthetic non-split example") {
    KLProfile p;
    p.K = NumberField::rationals();
    p.generating_primes = {2};
    p.r.emplace(2, p.K->from_rational(3));
    p.L_equals_K = false;
    auto lam7 = primes_above(p.K, 7)[0];
    CHECK_FALSE(L_splitting_test(p, lam7));
    p.r[2] = p.K->from_rational(2);
    CHECK(L_splitting_test(p, lam7));
    CHECK_THROWS_AS(L_splitting_test(p, primes_above(p.K, 2)[0]), std::domain_error);
}

TEST_CASE("PSL2 versus PGL2") {
    auto Q = NumberField::rationals();
    auto lam11 = primes_above(Q, 11)[0], lam7 = primes_above(Q, 7)[0];
    CHECK(decide_psl_vs_pgl(3, 27, lam11, true) == ImageType::PSL2);
    CHECK(decide_psl_vs_pgl(2, 11, lam7, true) == ImageType::PGL2);
    CHECK(decide_psl_vs_pgl(2, 11, lam7, false) == ImageType::PGL2);
    CHECK(decide_psl_vs_pgl(2, 77, lam7, true) == ImageType::Undetermined);
    auto K = NumberField::create(zp({1, -4, 1, 1}), "K");
    auto lam7c = primes_above(K, 7)[0];
    CHECK(lam7c.residue_degree == 3);
    auto F49 = primes_above(NumberField::create(zp({1, 0, 1})), 7)[0];
    CHECK(F49.residue_degree == 2);
    // Truth table: odd k or even residue degree means PSL2 iff splits.
    for (int k : {2, 3, 4, 5}) {
        for (const PrimeData* lam : {&lam11, &lam7c, &F49}) {
            for (bool s : {false, true}) {
                auto t = decide_psl_vs_pgl(k, 27, *lam, s);
                if (k % 2 == 1 || lam->residue_degree % 2 == 0)
                    CHECK(t == (s ? ImageType::PSL2 : ImageType::PGL2));
                else
                    CHECK(t == ImageType::PGL2);
            }
        }
    }
}
