#include <set>

#include "doctest.h"
#include "galimage/certifier.hpp"

using namespace galimage;

namespace {

struct Fixture {
    const NewformRecord& rec;
    KLProfile prof;
    Choices choices;
    ExceptionalSet S;
    explicit Fixture(const std::string& name)
        : rec(builtin_form(name)), prof(analyze(rec)), choices(default_choices(rec, prof, name)),
          S(exceptional_set(rec, prof, choices)) {}
};

const Fixture& f27() {
    static const Fixture f("level27");
    return f;
}

const Fixture& f160() {
    static const Fixture f("level160");
    return f;
}

// Independent oracle: rational gcd of q_i * N(r_{q_i} - (1 + q_i^{k-1})^2) from the integer r_p
// of the CM form (r_p = a_p^2 / eps(p) is a rational square here).
BigInt q_gcd_oracle(std::initializer_list<std::pair<std::uint64_t, long>> q_and_sqrt_r, int k) {
    BigInt g = 0;
    for (auto [q, s] : q_and_sqrt_r) {
        const BigInt c = 1 + pow(BigInt(static_cast<unsigned long>(q)), k - 1);
        g = gcd(g, BigInt(static_cast<unsigned long>(q)) * (BigInt(s) * s - c * c));
    }
    return abs(g);
}

}  // namespace

TEST_CASE("exceptional set for level 27") {
    const auto& f = f27();
    CHECK(f.S.small_bound == 11);
    CHECK(f.S.ells() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
    CHECK(f.S.q_gcd == q_gcd_oracle({{109, 164}, {379, 704}}, 3));
    CHECK(f.S.q_gcd == 108);
    CHECK(f.S.members.empty());
}

TEST_CASE("q_i differences at level 27") {
    const auto& f = f27();
    auto diff = [&](std::uint64_t q) -> BigRat {
        const BigInt c = 1 + BigInt(static_cast<unsigned long>(q)) * q;
        return (f.prof.r_in_K(q) - f.prof.K->from_rational(BigRat(c * c))).rational_value();
    };
    CHECK(diff(109) == BigRat(-4 * 27 * 7 * 19 * 31 * 317));
    CHECK(diff(379) == BigRat(BigInt(-4 * 27) * 2647 * 72173));
}

TEST_CASE("exceptional set for level 160") {
    const auto& f = f160();
    CHECK(f.S.small_bound == 11);
    const auto ells = f.S.ells();
    CHECK(ells == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
    // 13 is totally ramified in K; Z[r_3] is maximal there, so 13 enters through the q_i bullet.
    CHECK(std::find(f.S.index_candidates.begin(), f.S.index_candidates.end(), 13) != f.S.index_candidates.end());
    CHECK(std::find(f.S.index_primes.begin(), f.S.index_primes.end(), 13) == f.S.index_primes.end());
    for (const auto& lam : primes_of_K(f.prof, 13)) CHECK(f.S.contains(lam));
    for (const auto& lam : primes_of_K(f.prof, 17)) CHECK_FALSE(f.S.contains(lam));
}

TEST_CASE("norm and gcd identities at level 160") {
    const auto& f = f160();
    auto norm = [&](std::uint64_t p) { return BigInt(nf_norm(f.prof.r_in_K(p)).get_num()); };
    const BigInt two(2);
    CHECK(norm(3) == pow(two, 6));
    CHECK(norm(7) == pow(two, 6));
    CHECK(norm(11) == pow(two, 12) * 625);
    CHECK(norm(13) == pow(two, 12) * 169);
    CHECK(norm(17) == pow(two, 18) * 25);
    auto term = [&](std::uint64_t q) -> BigInt {
        const BigInt c = 1 + BigInt(static_cast<unsigned long>(q)) * q;
        const NFElement d = f.prof.r_in_K(q) - f.prof.K->from_rational(BigRat(c * c));
        return BigInt(static_cast<unsigned long>(q)) * BigInt(nf_norm(d).get_num());
    };
    const BigInt t641 = term(641), t1061 = term(1061);
    const BigInt g = gcd(t641, t1061);
    CHECK(g == pow(two, 12));
    // 1061 is not 1 mod 160, so it is rejected as a q_i.
    Choices c = f.choices;
    c.q_list = {641, 1061};
    CHECK_THROWS_WITH_AS(exceptional_set(f.rec, f.prof, c), doctest::Contains("not 1 mod 160"), DataError);
}

TEST_CASE("choices validation") {
    const auto& f = f27();
    Choices c = f.choices;
    c.q_list = {110};
    CHECK_THROWS_WITH_AS(validate_choices(f.rec, f.prof, c), doctest::Contains("invalid choices"), DataError);
    c = f.choices;
    c.p_list = {7};  // 7 = 1 mod 3 does not detect the character mod 3
    CHECK_THROWS_WITH_AS(validate_choices(f.rec, f.prof, c), doctest::Contains("quadratic character"), DataError);
    c = f.choices;
    c.q = 3;
    CHECK_THROWS_AS(validate_choices(f.rec, f.prof, c), DataError);
    auto autoc = default_choices(f.rec, f.prof);
    CHECK(autoc.q_list == std::vector<std::uint64_t>{109, 163});
    CHECK(autoc.p_list == std::vector<std::uint64_t>{2});
}

TEST_CASE("criteria context") {
    const auto& f = f27();
    auto lam = primes_of_K(f.prof, 7)[0];
    auto ctx = make_context(f.rec, f.prof, lam);
    CHECK(ctx.e0 == 0);
    CHECK(ctx.e1 == 0);
    CHECK(ctx.e2 == 0);
    CHECK(ctx.calM == 3);
    CHECK(ctx.bigF_degree == 2);
    auto ctx5 = make_context(f.rec, f.prof, primes_of_K(f.prof, 5)[0]);
    CHECK(ctx5.e2 == 1);
    CHECK(ctx5.calM == 15);
    auto ctx3 = make_context(f.rec, f.prof, primes_of_K(f.prof, 3)[0]);
    CHECK(ctx3.e0 == 1);
    const auto& g = f160();
    auto c3 = make_context(g.rec, g.prof, primes_of_K(g.prof, 3)[0]);
    CHECK(c3.calM == 120);
    CHECK(c3.e1 == 1);
    CHECK(c3.bigF_degree == 6);
    auto c19 = make_context(g.rec, g.prof, primes_of_K(g.prof, 19)[0]);
    CHECK(c19.calM == 40);
    auto c2 = make_context(g.rec, g.prof, primes_of_K(g.prof, 2)[0]);
    CHECK(c2.bigF_degree == c2.lam.residue_degree * 4);
}

TEST_CASE("worked witnesses at level 27") {
    const auto& f = f27();
    for (std::uint64_t ell : {7, 11}) {
        auto ctx = make_context(f.rec, f.prof, primes_of_K(f.prof, ell)[0]);
        auto b = check_condition_b(ctx, f.choices.p_list);
        REQUIRE(b.holds);
        REQUIRE(b.witnesses.size() == 1);
        CHECK(b.witnesses[0]["p"] == 5);
    }
    auto ctx = make_context(f.rec, f.prof, primes_of_K(f.prof, 11)[0]);
    auto a = check_condition_a(ctx, {379});
    CHECK(a.holds);
    for (const auto& w : a.witnesses) CHECK(w["p"] == 379);
    auto c = check_condition_c(ctx, 1);
    REQUIRE(c.holds);
    CHECK(c.witnesses[0]["p"] == 5);
    for (const auto& s : ctx.samples)
        if (s.p == 5) CHECK(s.v == ctx.lam.residue_field->from_int(3));
    CHECK(check_condition_d(ctx, 1).how == "clause: ell > 4k-3 and ell does not divide N");
    CHECK(check_condition_e(ctx, 1).how == "vacuous: #k_lambda = 11");
    auto ctx7 = make_context(f.rec, f.prof, primes_of_K(f.prof, 7)[0]);
    CHECK(check_condition_c(ctx7, 1).how == "clause: ell = +-2 mod 5 and #k_lambda != ell^2");
}

TEST_CASE("worked witnesses at level 160") {
    const auto& f = f160();
    auto ctx = make_context(f.rec, f.prof, primes_of_K(f.prof, 7)[0]);
    auto a = check_condition_a(ctx, f.choices.q_list);
    CHECK(a.holds);
    for (const auto& w : a.witnesses) CHECK((w["p"] == 641 || w["p"] == 1601));
    auto k7 = certify_k_lambda(ctx);
    CHECK(k7.proved);
    CHECK(k7.index_witness == 3);
    CHECK(check_condition_e(ctx, 3).how == "vacuous: #k_lambda = 343");
    auto ctx3 = make_context(f.rec, f.prof, primes_of_K(f.prof, 3)[0]);
    CHECK(certify_k_lambda(ctx3).index_witness == 7);
    auto b = check_condition_b(ctx3, f.choices.p_list);
    CHECK(b.holds);
    for (const auto& w : b.witnesses) CHECK((w["p"] == 7 || w["p"] == 11 || w["p"] == 13 || w["p"] == 17));
}

TEST_CASE("level 27: PSL2 for 7 <= ell <= 200") {
    const auto& f = f27();
    for (std::uint64_t ell : primes_up_to(200)) {
        if (ell < 7) continue;
        auto certs = certify(f.rec, f.prof, f.choices, f.S, ell);
        REQUIRE(certs.size() == 1);
        const auto& c = certs[0];
        CHECK_MESSAGE(c.verdict == Verdict::PSL2, "ell = ", ell, ": ", c.reason);
        CHECK(c.group == "PSL2(F_" + std::to_string(ell) + ")");
        CHECK(c.path == (ell <= 11 ? "direct conditions" : "outside S"));
        CHECK(c.direct_conditions_hold);
    }
}

TEST_CASE("level 27 at ell = 7 uses condition (e)") {
    const auto& f = f27();
    auto c = certify(f.rec, f.prof, f.choices, f.S, 7)[0];
    const auto& e = c.conditions.at(4);
    CHECK(e.holds);
    CHECK(e.witnesses.size() == 3);
    std::set<std::uint64_t> ps;
    for (const auto& w : e.witnesses) ps.insert(w.at("p").get<std::uint64_t>());
    for (std::uint64_t p : ps) CHECK((p == 13 || p == 37 || p == 41));
    CHECK(c.conditions.at(3).how.rfind("vacuous", 0) == 0);
}

TEST_CASE("level 160: PSL2 over the cubic residue field") {
    const auto& f = f160();
    for (std::uint64_t ell : {3, 7, 11, 19, 29}) {
        auto certs = certify(f.rec, f.prof, f.choices, f.S, ell);
        REQUIRE(certs.size() == 1);
        const auto& c = certs[0];
        CHECK_MESSAGE(c.verdict == Verdict::PSL2, "ell = ", ell, ": ", c.reason);
        CHECK(c.group == "PSL2(F_" + std::to_string(ell) + "^3)");
        CHECK(c.residue_degree == 3);
        CHECK(c.k_lambda.proved);
    }
    // A split prime gives three certificates over F_ell.
    auto c53 = certify(f.rec, f.prof, f.choices, f.S, 53);
    CHECK(c53.size() == 3);
    for (const auto& c : c53) CHECK(c.group == "PSL2(F_53)");
}

TEST_CASE("unresolved small primes stay inconclusive") {
    const auto& f = f27();
    auto c3 = certify(f.rec, f.prof, f.choices, f.S, 3)[0];
    CHECK(c3.in_S);
    if (c3.verdict == Verdict::Inconclusive) CHECK(c3.path == "none");
}

TEST_CASE("S membership is monotone in the choices" * doctest::description("property")) {
    // Dropping a q_i or adding index primes can only grow S.
    const auto& f = f160();
    Choices fewer_q = f.choices;
    fewer_q.q_list = {641};
    auto S1 = exceptional_set(f.rec, f.prof, fewer_q);
    Choices extra = f.choices;
    extra.extra_index_primes = {97};
    auto S2 = exceptional_set(f.rec, f.prof, extra);
    for (std::uint64_t ell : primes_up_to(150))
        for (const auto& lam : primes_of_K(f.prof, ell)) {
            if (f.S.contains(lam)) {
                CHECK(S1.contains(lam));
                CHECK(S2.contains(lam));
            }
            if (ell == 97) CHECK(S2.contains(lam));
        }
}

TEST_CASE("certificates replay" * doctest::description("property")) {
    for (const auto* f : {&f27(), &f160()}) {
        for (std::uint64_t ell : {2, 3, 7, 13, 23, 53}) {
            for (const auto& c : certify(f->rec, f->prof, f->choices, f->S, ell)) {
                const auto j = c.to_json();
                CHECK_MESSAGE(replay(f->rec, f->prof, f->S, j).empty(), j.dump());
                // Tampering is detected.
                auto t = j;
                if (!t["conditions"].contains("b") || t["conditions"]["b"]["witnesses"].empty()) continue;
                // a prime dividing N is never a witness
                t["conditions"]["b"]["witnesses"][0]["p"] = f->rec.level % 2 ? 3 : 2;
                CHECK_MESSAGE(!replay(f->rec, f->prof, f->S, t).empty(), t.dump());
                auto t2 = j;
                t2["in_S"] = !j["in_S"].get<bool>();
                CHECK_FALSE(replay(f->rec, f->prof, f->S, t2).empty());
            }
        }
    }
}

TEST_CASE("certification is deterministic") {
    const auto& f = f160();
    auto a = certify(f.rec, f.prof, f.choices, f.S, 29)[0].to_json().dump();
    auto b = certify(f.rec, f.prof, f.choices, f.S, 29)[0].to_json().dump();
    CHECK(a == b);
}
