// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "galimage/certifier.hpp"
#include "galimage/gl2.hpp"

using namespace galimage;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why << what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ZPoly zp(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    return ZPoly(v);
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

void criterion1(Check& c) {
    const auto a = build_level27_newform(2000);
    const std::vector<std::pair<int, GaussInt>> shown{
        {2, GaussInt(0, 3)},  {4, GaussInt(-5)}, {5, GaussInt(0, -3)},   {7, GaussInt(5)},
        {8, GaussInt(0, -3)}, {10, GaussInt(9)}, {11, GaussInt(0, -15)}, {13, GaussInt(-10)}};
    c.require(a[1] == GaussInt(1), "a_1 != 1");
    for (const auto& [n, v] : shown) c.require(a[n] == v, "a_" + std::to_string(n) + " = " + a[n].str());
    const auto rep = hecke_validate(a, 3, -3, 27);
    c.require(rep.pass, "Hecke relations: " + rep.violation);
}

void criterion2(Check& c) {
    const auto& rec = builtin_form("level27");
    c.require(r_invariant(rec, 5) == rec.field->from_rational(9), "r_5 != 9");
    c.require(r_invariant(rec, 109) == rec.field->from_rational(164 * 164), "r_109 != 164^2");
    c.require(r_invariant(rec, 379) == rec.field->from_rational(704 * 704), "r_379 != 704^2");
    for (std::uint64_t p : primes_up_to(2000)) {
        if (p == 3) continue;
        const NFElement r = r_invariant(rec, p);
        bool sq = r.is_rational() && r.rational_value().get_den() == 1 && r.rational_value() >= 0 &&
                  mpz_perfect_square_p(r.rational_value().get_num_mpz_t());
        c.require(sq, "r_" + std::to_string(p) + " is not a perfect square");
    }
}

void criterion3(Check& c) {
    const auto& rec = builtin_form("level27");
    const auto prof = analyze(rec);
    auto diff = [&](std::uint64_t q) -> BigRat {
        const BigInt t = 1 + big(q) * big(q);
        return (prof.r_in_K(q) - prof.K->from_rational(BigRat(t * t))).rational_value();
    };
    c.require(diff(109) == BigRat(-4 * 27 * 7 * 19 * 31 * 317), "r_109 - (1+109^2)^2");
    c.require(diff(379) == BigRat(BigInt(-4 * 27) * 2647 * 72173), "r_379 - (1+379^2)^2");
    Choices ch;
    ch.q_list = {109, 379};
    ch.p_list = {5};
    ch.q = 5;
    const auto S = exceptional_set(rec, prof, ch);
    c.require(S.ells() == std::vector<std::uint64_t>{2, 3, 5, 7, 11}, "S != {2,3,5,7,11}");
}

void criterion4(Check& c) {
    const auto t0 = Clock::now();
    const auto& rec = builtin_form("level27");
    const auto prof = analyze(rec);
    const auto ch = default_choices(rec, prof, "level27");
    const auto S = exceptional_set(rec, prof, ch);
    for (std::uint64_t ell : primes_up_to(200)) {
        if (ell < 7) continue;
        const auto certs = certify(rec, prof, ch, S, ell);
        c.require(certs.size() == 1, "more than one prime above " + std::to_string(ell));
        const auto& ct = certs[0];
        c.require(ct.verdict == Verdict::PSL2 && ct.group == "PSL2(F_" + std::to_string(ell) + ")",
                  "ell = " + std::to_string(ell) + ": " + to_string(ct.verdict) + " " + ct.reason);
        if (ell == 7 || ell == 11) c.require(ct.path == "direct conditions", "ell = " + std::to_string(ell) + " not direct");
        if (ell == 7) {
            const auto& e = ct.conditions.at(4);
            c.require(e.holds && e.how == "witnesses", "condition (e) at 7");
            for (const auto& w : e.witnesses) {
                const auto p = w.at("p").get<std::uint64_t>();
                c.require(p == 13 || p == 37 || p == 41, "(e) witness " + std::to_string(p));
            }
        }
        c.require(replay(rec, prof, S, ct.to_json()).empty(), "replay fails at " + std::to_string(ell));
    }
    c.require(seconds_since(t0) < 300, "scan slower than 5 min");
}

void criterion5(Check& c) {
    const auto& rec = builtin_form("level160");
    c.require(rec.field->degree() == 6, "[E:Q] != 6");
    const auto cubic = NFPoly::from_qpoly(rec.field, to_qpoly(zp({1, -4, 1, 1})));
    const auto quad = NFPoly::from_qpoly(rec.field, to_qpoly(zp({1, 0, 1})));
    c.require(!roots_in_field(cubic).empty(), "x^3+x^2-4x+1 has no root in E");
    c.require(!roots_in_field(quad).empty(), "x^2+1 has no root in E");
    const auto prof = analyze(rec);
    auto norm = [&](std::uint64_t p) { return BigInt(nf_norm(prof.r_in_K(p)).get_num()); };
    const BigInt two(2);
    c.require(norm(3) == pow(two, 6), "N(r_3)");
    c.require(norm(7) == pow(two, 6), "N(r_7)");
    c.require(norm(11) == pow(two, 12) * 625, "N(r_11)");
    c.require(norm(13) == pow(two, 12) * 169, "N(r_13)");
    c.require(norm(17) == pow(two, 18) * 25, "N(r_17)");
    auto term = [&](std::uint64_t q) -> BigInt {
        const BigInt t = 1 + big(q) * big(q);
        return big(q) * BigInt(nf_norm(prof.r_in_K(q) - prof.K->from_rational(BigRat(t * t))).get_num());
    };
    const BigInt t641 = term(641), t1061 = term(1061);
    const BigInt g = gcd(t641, t1061);
    c.require(g == pow(two, 12), "gcd = " + to_string(g));
    for (std::uint64_t p : {3, 7, 11}) {
        const auto& r = prof.r_in_K(p);
        const auto s = sqrt_in_field(r);
        c.require(s && *s * *s == r && !r.is_rational(), "r_" + std::to_string(p) + " not a non-rational square in K");
    }
}

void criterion6(Check& c) {
    const auto t0 = Clock::now();
    const auto& rec = builtin_form("level160");
    const auto prof = analyze(rec);
    const auto ch = default_choices(rec, prof, "level160");
    const auto S = exceptional_set(rec, prof, ch);
    for (std::uint64_t ell : {3, 7, 11, 19, 29}) {
        const auto lams = primes_of_K(prof, ell);
        c.require(lams.size() == 1 && lams[0].residue_degree == 3 && lams[0].ramification == 1,
                  std::to_string(ell) + " is not inert");
        const auto certs = certify(rec, prof, ch, S, ell);
        c.require(certs.size() == 1, "certificates at " + std::to_string(ell));
        const auto& ct = certs[0];
        c.require(ct.field_size == pow(big(ell), 3), "field size at " + std::to_string(ell));
        c.require(ct.verdict == Verdict::PSL2 && ct.group == "PSL2(F_" + std::to_string(ell) + "^3)",
                  "ell = " + std::to_string(ell) + ": " + to_string(ct.verdict) + " " + ct.reason);
        c.require(ct.path == (ell <= 11 ? "direct conditions" : "outside S"), "path at " + std::to_string(ell));
        c.require(replay(rec, prof, S, ct.to_json()).empty(), "replay fails at " + std::to_string(ell));
    }
    c.require(seconds_since(t0) < 120, "slower than 2 min");
}

void criterion7(Check& c) {
    const auto t0 = Clock::now();
    const auto res = run_oracle_selftest();
    std::size_t tables = 0, cartans = 0;
    for (const auto& r : res) {
        c.require(r.pass, r.name + ": " + r.detail);
        tables += r.name.rfind("order vs", 0) == 0;
        cartans += r.name.find("Cartan") != std::string::npos;
    }
    c.require(tables == 5 && cartans == 10, "suite coverage");
    c.require(seconds_since(t0) < 30, "slower than 30 s");
}

void criterion8(Check& c) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        BigInt n = big(rng() % 1000000000000ull + 1) * big(rng() % 100000 + 1);
        BigInt prod = 1;
        for (const auto& [p, e] : factor_integer(n)) {
            c.require(is_prime(p), "non-prime factor");
            prod *= pow(p, static_cast<unsigned long>(e));
        }
        c.require(prod == n, "factorization of " + to_string(n));
    }
    for (std::int64_t p : {3, 5, 7, 11, 13, 101, 997}) {
        const auto ps = static_cast<std::uint64_t>(p);
        for (std::int64_t a = 1; a < p; ++a) {
            const std::uint64_t e = powmod_u64(static_cast<std::uint64_t>(a), (ps - 1) / 2, ps);
            c.require(kronecker(a, p) == (e == 1 ? 1 : -1), "Euler criterion");
            for (std::int64_t b = 1; b < p; ++b)
                c.require(kronecker(a * b, p) == kronecker(a, p) * kronecker(b, p), "Kronecker multiplicativity");
        }
    }
    for (std::uint64_t m : {3, 40, 120}) {
        std::size_t involutions = 0;
        for (std::uint64_t x = 1; x < m; ++x)
            if (gcd_u64(x, m) == 1 && x * x % m == 1) ++involutions;
        const auto chars = enumerate_quadratic_chars(m);
        c.require(chars.size() + 1 == involutions, "quadratic characters mod " + std::to_string(m));
        for (const auto& chi : chars)
            for (std::uint64_t a = 1; a < m; ++a)
                for (std::uint64_t b = 1; b < m; ++b)
                    if (gcd_u64(a * b, m) == 1)
                        c.require(chi.value(static_cast<std::int64_t>(a * b % m)) ==
                                      chi.value(static_cast<std::int64_t>(a)) * chi.value(static_cast<std::int64_t>(b)),
                                  "character homomorphism mod " + std::to_string(m));
    }
    const auto F = FiniteField::of_degree(7, 2);
    for (const auto& chi : enumerate_ff_chars(40, F))
        for (std::int64_t a : {3, 7, 11, 13})
            for (std::int64_t b : {3, 7, 17, 19})
                c.require(chi.value(a * b % 40) == chi.value(a) * chi.value(b), "F-valued character homomorphism");
    c.require(seconds_since(t0) < 30, "slower than 30 s");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"level-27 q-expansion and Hecke relations to 2000", criterion1},
        {"twist invariants r_p of the level-27 form", criterion2},
        {"exceptional-set identities and S = {2,3,5,7,11}", criterion3},
        {"level-27 certification, 7 <= ell <= 200", criterion4},
        {"level-160 fixture, norms and gcd identity", criterion5},
        {"level-160 certification over F_ell^3", criterion6},
        {"GL2 oracle suites", criterion7},
        {"arithmetic and character property suites", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto t0 = Clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        std::printf("%s  criterion %zu: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    seconds_since(t0), c.ok ? "" : " -- ", c.ok ? "" : c.why.str().c_str());
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
