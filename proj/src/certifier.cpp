#include "galimage/certifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace galimage {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::uint64_t radical(std::uint64_t n) {
    std::uint64_t r = 1;
    for (const auto& [p, e] : factor_u64(n)) r *= p;
    return r;
}

// (1 + q^{k-1})^2
BigInt q_target(std::uint64_t q, int k) {
    const BigInt t = 1 + pow(big(q), static_cast<unsigned long>(k - 1));
    return t * t;
}

std::uint64_t small_bound_for(int k) { return std::max<std::uint64_t>(5 * static_cast<std::uint64_t>(k) - 4, 7); }

std::uint64_t calM_prime(std::uint64_t N) { return (N % 2 ? 1 : 4) * radical(N); }

bool covers_quadratic_chars(const std::vector<std::uint64_t>& ps, std::uint64_t m) {
    for (const auto& chi : enumerate_quadratic_chars(m)) {
        bool hit = false;
        for (std::uint64_t p : ps)
            if (chi.value(static_cast<std::int64_t>(p)) == -1) hit = true;
        if (!hit) return false;
    }
    return true;
}

std::vector<std::uint64_t> coeffs_of(const FFElem& x) {
    std::vector<std::uint64_t> c;
    for (int i = 0; i < x.field()->degree(); ++i) c.push_back(x.residue()[i]);
    return c;
}

FFElem elem_from(const FiniteFieldPtr& f, const nlohmann::json& c) {
    return f->from_poly(FpPoly(f->characteristic(), c.get<std::vector<std::uint64_t>>()));
}

std::string field_name(std::uint64_t ell, int f) {
    return "F_" + std::to_string(ell) + (f > 1 ? "^" + std::to_string(f) : "");
}

const std::vector<std::string> kCondNames{"a", "b", "c", "d", "e"};

}  // namespace

nlohmann::json to_json(const Choices& c) {
    return {{"q_list", c.q_list}, {"p_list", c.p_list}, {"q", c.q}, {"extra_index_primes", c.extra_index_primes}};
}

void validate_choices(const NewformRecord& rec, const KLProfile& prof, const Choices& c) {
    auto fail = [](const std::string& m) { throw DataError("invalid choices: " + m); };
    auto sampled = [&](std::uint64_t p, const char* what) {
        if (!is_prime_u64(p)) fail(std::string(what) + " = " + std::to_string(p) + " is not prime");
        if (rec.level % p == 0) fail(std::string(what) + " = " + std::to_string(p) + " divides N");
        if (!prof.r.count(p)) fail("r_" + std::to_string(p) + " not available");
    };
    if (c.q_list.empty()) fail("empty q_i list");
    BigInt g = 0;
    for (std::uint64_t q : c.q_list) {
        sampled(q, "q_i");
        if (q % rec.level != 1 % rec.level) fail("q_i = " + std::to_string(q) + " is not 1 mod " + std::to_string(rec.level));
        const NFElement d = prof.r_in_K(q) - prof.K->from_rational(BigRat(q_target(q, rec.weight)));
        g = gcd(g, big(q) * BigInt(nf_norm(d).get_num()));
    }
    if (g == 0) fail("every r_{q_i} equals (1 + q_i^{k-1})^2, so S contains every prime");
    for (std::uint64_t p : c.p_list) {
        sampled(p, "p_i");
        if (prof.r_in_K(p).is_zero()) fail("r_" + std::to_string(p) + " = 0");
    }
    const std::uint64_t mp = calM_prime(rec.level);
    if (!covers_quadratic_chars(c.p_list, mp))
        fail("p_i do not detect every quadratic character mod " + std::to_string(mp));
    sampled(c.q, "q");
    if (minpoly_over_Q(prof.r_in_K(c.q)).degree() != prof.k_degree) fail("Q(r_q) != K for q = " + std::to_string(c.q));
    for (std::uint64_t p : c.extra_index_primes)
        if (!is_prime_u64(p)) fail("extra index prime " + std::to_string(p) + " is not prime");
}

Choices default_choices(const NewformRecord& rec, const KLProfile& prof, const std::string& builtin) {
    Choices c;
    if (builtin == "level27") {
        c.q_list = {109, 379};
        c.p_list = {5};
        c.q = 5;
    } else if (builtin == "level160") {
        c.q_list = {641, 1601};
        c.p_list = {3, 7, 11};
        c.q = 3;
    } else {
        for (const auto& [p, r] : prof.r) {
            if (c.q_list.size() == 2) break;
            if (p % rec.level == 1 % rec.level && r != prof.K->from_rational(BigRat(q_target(p, rec.weight))))
                c.q_list.push_back(p);
        }
        const std::uint64_t mp = calM_prime(rec.level);
        auto remaining = enumerate_quadratic_chars(mp);
        for (const auto& [p, r] : prof.r) {
            if (remaining.empty()) break;
            if (r.is_zero() || mp % p == 0) continue;
            const auto before = remaining.size();
            std::erase_if(remaining, [&](const QuadChar& chi) { return chi.value(static_cast<std::int64_t>(p)) == -1; });
            if (remaining.size() < before) c.p_list.push_back(p);
        }
        c.q = prof.generator_prime;
    }
    validate_choices(rec, prof, c);
    return c;
}

// ---- exceptional set

bool ExceptionalSet::contains(const PrimeData& lam) const { return !reasons_for(lam).empty(); }

std::vector<std::uint64_t> ExceptionalSet::ells() const {
    std::set<std::uint64_t> out;
    for (std::uint64_t p : primes_up_to(small_bound)) out.insert(p);
    for (const auto& m : members) out.insert(m.ell);
    return {out.begin(), out.end()};
}

std::vector<std::string> ExceptionalSet::reasons_for(const PrimeData& lam) const {
    std::vector<std::string> out;
    if (lam.ell <= small_bound) out.push_back("ell <= " + std::to_string(small_bound));
    const std::string d = lam.describe();
    for (const auto& m : members)
        if (m.ell == lam.ell && (m.lambda == "*" || m.lambda == d)) out.insert(out.end(), m.reasons.begin(), m.reasons.end());
    return out;
}

ExceptionalSet exceptional_set(const NewformRecord& rec, const KLProfile& prof, const Choices& choices) {
    validate_choices(rec, prof, choices);
    const std::uint64_t N = rec.level;
    const int k = rec.weight;
    ExceptionalSet S;
    S.small_bound = small_bound_for(k);
    std::map<std::uint64_t, std::map<std::string, std::vector<std::string>>> acc;
    auto add_all = [&](std::uint64_t ell, const std::string& why) {
        if (ell > S.small_bound) acc[ell]["*"].push_back(why);
    };
    for (const auto& [p, e] : factor_u64(N)) add_all(p, "ell | N");

    // Every q_i bullet at once: candidates divide the gcd.
    std::vector<NFElement> qdiff;
    for (std::uint64_t q : choices.q_list) {
        qdiff.push_back(prof.r_in_K(q) - prof.K->from_rational(BigRat(q_target(q, k))));
        S.q_gcd = gcd(S.q_gcd, big(q) * BigInt(nf_norm(qdiff.back()).get_num()));
    }
    for (const BigInt& l : prime_divisors(S.q_gcd)) {
        if (!l.fits_ulong_p()) throw DataError("exceptional prime too large: " + to_string(l));
        const std::uint64_t ell = l.get_ui();
        if (ell <= S.small_bound || N % ell == 0) continue;
        for (const auto& lam : primes_of_K(prof, ell)) {
            bool all = true;
            for (std::size_t i = 0; i < qdiff.size(); ++i)
                if (choices.q_list[i] != ell && !reduce_mod(qdiff[i], lam).is_zero()) all = false;
            if (all) acc[ell][lam.describe()].push_back("r_{q_i} = (1 + q_i^{k-1})^2 mod lambda for every q_i");
        }
    }

    for (std::uint64_t p : choices.p_list) {
        add_all(p, "ell = p_i = " + std::to_string(p));
        for (const BigInt& l : prime_divisors(BigInt(nf_norm(prof.r_in_K(p)).get_num()))) {
            const std::uint64_t ell = l.get_ui();
            if (ell <= S.small_bound || N % ell == 0 || ell == p) continue;
            for (const auto& lam : primes_of_K(prof, ell))
                if (reduce_mod(prof.r_in_K(p), lam).is_zero())
                    acc[ell][lam.describe()].push_back("r_" + std::to_string(p) + " = 0 mod lambda");
        }
    }

    add_all(choices.q, "ell = q = " + std::to_string(choices.q));
    const ZPoly mq = to_zpoly(minpoly_over_Q(prof.r_in_K(choices.q)));
    const BigInt disc = poly_discriminant(mq);
    if (disc != 0)
        for (const auto& [l, e] : factor_integer(disc)) {
            if (e < 2) continue;
            const std::uint64_t ell = l.get_ui();
            S.index_candidates.push_back(ell);
            if (order_maximal_at(mq, ell)) continue;
            S.index_primes.push_back(ell);
            add_all(ell, "ell may divide [R : Z[r_q]]");
        }
    for (std::uint64_t ell : choices.extra_index_primes) add_all(ell, "extra index prime");

    for (auto& [ell, by] : acc) {
        if (by.count("*")) {
            std::vector<std::string> rs;
            for (auto& [name, why] : by) rs.insert(rs.end(), why.begin(), why.end());
            S.members.push_back({ell, "*", rs});
        } else {
            for (auto& [name, why] : by) S.members.push_back({ell, name, why});
        }
    }
    return S;
}

nlohmann::json to_json(const ExceptionalSet& s) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& e : s.members) m.push_back({{"ell", e.ell}, {"lambda", e.lambda}, {"reasons", e.reasons}});
    return {{"small_bound", s.small_bound},
            {"members", m},
            {"ells", s.ells()},
            {"q_gcd", to_string(s.q_gcd)},
            {"index_candidates", s.index_candidates},
            {"index_primes", s.index_primes}};
}

// ---- criteria

CriteriaContext make_context(const NewformRecord& rec, const KLProfile& prof, const PrimeData& lam,
                             std::uint64_t prime_search_bound) {
    CriteriaContext ctx;
    ctx.rec = &rec;
    ctx.prof = &prof;
    ctx.lam = lam;
    const std::uint64_t N = rec.level, ell = lam.ell;
    const int k = rec.weight;
    ctx.e0 = (ell + 1 >= static_cast<std::uint64_t>(k) && N % ell != 0) ? 0 : static_cast<int>(ell) - 2;
    ctx.e1 = N % 2 ? 0 : 1;
    ctx.e2 = ell >= 2 * static_cast<std::uint64_t>(k) ? 0 : 1;
    ctx.calM = (ctx.e1 ? 4 : 1) * (ctx.e2 ? ell : 1) * radical(N);
    const int rel = rec.field->degree() / prof.k_degree;
    int l = 1;
    for (int i = 2; i <= rel; ++i) l = std::lcm(l, i);
    ctx.bigF_degree = lam.residue_degree * l * (ell == 2 ? 2 : 1);
    ctx.bigF = FiniteField::of_degree(ell, ctx.bigF_degree);
    ctx.to_bigF = embed(lam.residue_field, ctx.bigF);
    for (const auto& [p, r] : prof.r) {
        if (p > prime_search_bound) break;
        if (N % p == 0 || p == ell) continue;
        const FFElem rr = reduce_mod(r, lam);
        const FFElem pk = lam.residue_field->from_int(big(p)).pow(static_cast<std::uint64_t>(k - 1));
        ctx.samples.push_back({p, rr, rr / pk});
    }
    return ctx;
}

nlohmann::json ConditionReport::to_json() const {
    return {{"holds", holds}, {"how", how}, {"witnesses", witnesses}, {"unwitnessed", unwitnessed}};
}

namespace {

std::vector<const CriteriaContext::Sample*> ordered(const CriteriaContext& ctx, const std::vector<std::uint64_t>& pref) {
    std::vector<const CriteriaContext::Sample*> out;
    for (std::uint64_t p : pref)
        for (const auto& s : ctx.samples)
            if (s.p == p) out.push_back(&s);
    for (const auto& s : ctx.samples)
        if (std::find(pref.begin(), pref.end(), s.p) == pref.end()) out.push_back(&s);
    return out;
}

// eps(p) r_p != (z + eps(p) p^{k-1} / z)^2 in F', z = chi(p) p^j.
bool a_witness(const CriteriaContext& ctx, const CriteriaContext::Sample& s, const FFChar& chi, int j) {
    const auto& F = ctx.bigF;
    const int eps = ctx.rec->eps(static_cast<std::int64_t>(s.p));
    const FFElem pe = F->from_int(big(s.p));
    const FFElem z = chi.value(static_cast<std::int64_t>(s.p)) * pe.pow(static_cast<std::uint64_t>(j));
    const FFElem w = z + F->from_int(eps) * pe.pow(static_cast<std::uint64_t>(ctx.rec->weight - 1)) / z;
    return F->from_int(eps) * ctx.to_bigF(s.r) != w * w;
}

bool b_witness(const CriteriaContext::Sample& s, const QuadChar& chi) {
    return chi.value(static_cast<std::int64_t>(s.p)) == -1 && !s.r.is_zero();
}

bool c_witness(const CriteriaContext::Sample& s) {
    const auto& F = s.v.field();
    const FFElem& v = s.v;
    if (v.is_zero() || v == F->one() || v == F->from_int(4)) return false;
    return !(v * v - F->from_int(3) * v + F->one()).is_zero();
}

bool d_witness(const CriteriaContext::Sample& s) {
    const auto& F = s.v.field();
    const FFElem& v = s.v;
    return !(v.is_zero() || v == F->one() || v == F->from_int(2) || v == F->from_int(4));
}

bool e_witness(const CriteriaContext::Sample& s, const QuadChar& chi) {
    return chi.value(static_cast<std::int64_t>(s.p)) == 1 && s.v == s.v.field()->from_int(2);
}

std::uint64_t e_modulus(const CriteriaContext& ctx) { return (ctx.e1 ? 4 : 1) * ctx.lam.ell * ctx.rec->level; }

BigInt klam_size(const CriteriaContext& ctx, int d) { return pow(big(ctx.lam.ell), static_cast<unsigned long>(d)); }

}  // namespace

ConditionReport check_condition_a(const CriteriaContext& ctx, const std::vector<std::uint64_t>& preferred) {
    ConditionReport rep;
    const auto order = ordered(ctx, preferred);
    const auto chars = enumerate_ff_chars(ctx.rec->level, ctx.bigF);
    rep.holds = true;
    for (int j = 0; j <= ctx.e0; ++j)
        for (const auto& chi : chars) {
            nlohmann::json imgs = nlohmann::json::array();
            for (const auto& x : chi.images()) imgs.push_back(coeffs_of(x));
            bool found = false;
            for (const auto* s : order)
                if (a_witness(ctx, *s, chi, j)) {
                    rep.witnesses.push_back({{"j", j}, {"chi", imgs}, {"p", s->p}});
                    found = true;
                    break;
                }
            if (!found) {
                rep.holds = false;
                rep.unwitnessed.push_back({{"j", j}, {"chi", chi.describe()}});
            }
        }
    rep.how = rep.holds ? "witnesses" : "search exhausted";
    return rep;
}

ConditionReport check_condition_b(const CriteriaContext& ctx, const std::vector<std::uint64_t>& preferred) {
    ConditionReport rep;
    const auto order = ordered(ctx, preferred);
    rep.holds = true;
    for (const auto& chi : enumerate_quadratic_chars(ctx.calM)) {
        bool found = false;
        for (const auto* s : order)
            if (b_witness(*s, chi)) {
                rep.witnesses.push_back({{"chi", chi.signs()}, {"p", s->p}});
                found = true;
                break;
            }
        if (!found) {
            rep.holds = false;
            rep.unwitnessed.push_back(chi.describe());
        }
    }
    rep.how = rep.holds ? "witnesses" : "search exhausted";
    return rep;
}

ConditionReport check_condition_c(const CriteriaContext& ctx, int d) {
    ConditionReport rep;
    const BigInt q = klam_size(ctx, d);
    const std::uint64_t ell = ctx.lam.ell, N = ctx.rec->level;
    const int k = ctx.rec->weight;
    const std::uint64_t r5 = ell % 5;
    rep.holds = true;
    if (q == 4 || q == 5)
        rep.how = "vacuous: #k_lambda = " + to_string(q);
    else if (ell + 4 > 5 * static_cast<std::uint64_t>(k) && N % ell != 0)
        rep.how = "clause: ell > 5k-4 and ell does not divide N";
    else if ((r5 == 0 || r5 == 1 || r5 == 4) && q != big(ell))
        rep.how = "clause: ell = 0, +-1 mod 5 and #k_lambda != ell";
    else if ((r5 == 2 || r5 == 3) && q != big(ell) * big(ell))
        rep.how = "clause: ell = +-2 mod 5 and #k_lambda != ell^2";
    else {
        for (const auto& s : ctx.samples)
            if (c_witness(s)) {
                rep.witnesses.push_back({{"p", s.p}});
                rep.how = "witnesses";
                return rep;
            }
        rep.holds = false;
        rep.how = "search exhausted";
        rep.unwitnessed.push_back("v not in {0, 1, 4} and not a root of x^2 - 3x + 1");
    }
    return rep;
}

ConditionReport check_condition_d(const CriteriaContext& ctx, int d) {
    ConditionReport rep;
    const BigInt q = klam_size(ctx, d);
    const std::uint64_t ell = ctx.lam.ell, N = ctx.rec->level;
    const int k = ctx.rec->weight;
    rep.holds = true;
    if (q == 3 || q == 5 || q == 7)
        rep.how = "vacuous: #k_lambda = " + to_string(q);
    else if (ell + 3 > 4 * static_cast<std::uint64_t>(k) && N % ell != 0)
        rep.how = "clause: ell > 4k-3 and ell does not divide N";
    else if (q != big(ell))
        rep.how = "clause: #k_lambda != ell";
    else {
        for (const auto& s : ctx.samples)
            if (d_witness(s)) {
                rep.witnesses.push_back({{"p", s.p}});
                rep.how = "witnesses";
                return rep;
            }
        rep.holds = false;
        rep.how = "search exhausted";
        rep.unwitnessed.push_back("v not in {0, 1, 2, 4}");
    }
    return rep;
}

ConditionReport check_condition_e(const CriteriaContext& ctx, int d) {
    ConditionReport rep;
    const BigInt q = klam_size(ctx, d);
    rep.holds = true;
    if (q != 5 && q != 7) {
        rep.how = "vacuous: #k_lambda = " + to_string(q);
        return rep;
    }
    for (const auto& chi : enumerate_quadratic_chars(e_modulus(ctx))) {
        bool found = false;
        for (const auto& s : ctx.samples)
            if (e_witness(s, chi)) {
                rep.witnesses.push_back({{"chi", chi.signs()}, {"p", s.p}});
                found = true;
                break;
            }
        if (!found) {
            rep.holds = false;
            rep.unwitnessed.push_back(chi.describe());
        }
    }
    rep.how = rep.holds ? "witnesses" : "search exhausted";
    return rep;
}

nlohmann::json KLambdaProof::to_json() const {
    return {{"proved", proved},
            {"observed_degree", observed_degree},
            {"residue_degree", residue_degree},
            {"method", method},
            {"witness", witness},
            {"index_witness", index_witness}};
}

KLambdaProof certify_k_lambda(const CriteriaContext& ctx) {
    KLambdaProof pr;
    pr.residue_degree = ctx.lam.residue_degree;
    int seen = 1;
    for (const auto& s : ctx.samples) {
        const int d = s.r.is_zero() ? 1 : element_degree(s.r);
        seen = std::lcm(seen, d);
        if (!pr.witness && d == pr.residue_degree) pr.witness = s.p;
    }
    pr.observed_degree = seen;
    if (pr.residue_degree == 1) {
        pr.proved = true;
        pr.method = "F_lambda is the prime field";
    } else if (pr.witness) {
        pr.proved = true;
        pr.method = "r_" + std::to_string(pr.witness) + " mod lambda generates F_lambda";
    } else {
        pr.method = "no sampled r_p generates F_lambda";
    }
    std::size_t tried = 0;
    for (const auto& s : ctx.samples) {
        if (++tried > 64) break;
        const QPoly m = minpoly_over_Q(ctx.prof->r_in_K(s.p));
        if (m.degree() == ctx.prof->k_degree && order_maximal_at(to_zpoly(m), ctx.lam.ell)) {
            pr.index_witness = s.p;
            break;
        }
    }
    return pr;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PSL2:
            return "PSL2";
        case Verdict::PGL2:
            return "PGL2";
        default:
            return "Inconclusive";
    }
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json conds = nlohmann::json::object();
    for (std::size_t i = 0; i < conditions.size(); ++i) conds[kCondNames[i]] = conditions[i].to_json();
    return {{"schema", "GalImageCertificateV1"},
            {"ell", ell},
            {"lambda", lambda},
            {"residue_degree", residue_degree},
            {"field_size", galimage::to_string(field_size)},
            {"verdict", galimage::to_string(verdict)},
            {"group", group},
            {"reason", reason},
            {"path", path},
            {"in_S", in_S},
            {"S_reasons", S_reasons},
            {"direct_conditions_hold", direct_conditions_hold},
            {"L_splits", L_splits},
            {"k_lambda", k_lambda.to_json()},
            {"conditions", conds},
            {"notes", notes},
            {"exceptional_set", exceptional_set_used},
            {"provenance", provenance}};
}

namespace {

Certificate certify_one(const NewformRecord& rec, const KLProfile& prof, const Choices& choices,
                        const ExceptionalSet& S, const PrimeData& lam, const CertifyConfig& cfg) {
    Certificate c;
    c.ell = lam.ell;
    c.lambda = lam.describe();
    c.residue_degree = lam.residue_degree;
    c.field_size = pow(big(lam.ell), static_cast<unsigned long>(lam.residue_degree));
    c.S_reasons = S.reasons_for(lam);
    c.in_S = !c.S_reasons.empty();
    c.exceptional_set_used = S.ells();
    c.provenance = "form: " + rec.source + "; choices: " + to_json(choices).dump() +
                   "; prime search bound: " + std::to_string(std::min<std::uint64_t>(cfg.prime_search_bound, rec.precision()));
    const auto ctx = make_context(rec, prof, lam, cfg.prime_search_bound);
    c.k_lambda = certify_k_lambda(ctx);

    const int d = c.k_lambda.proved ? lam.residue_degree : c.k_lambda.observed_degree;
    c.conditions = {check_condition_a(ctx, choices.q_list), check_condition_b(ctx, choices.p_list),
                    check_condition_c(ctx, d), check_condition_d(ctx, d), check_condition_e(ctx, d)};
    c.direct_conditions_hold = c.k_lambda.proved;
    for (const auto& r : c.conditions) c.direct_conditions_hold = c.direct_conditions_hold && r.holds;
    if (!c.k_lambda.proved) c.notes.push_back("k_lambda = F_lambda not proved; (c)-(e) evaluated with the observed degree");
    for (std::size_t i = 0; i < c.conditions.size(); ++i)
        if (c.conditions[i].how.rfind("vacuous", 0) == 0)
            c.notes.push_back("condition (" + kCondNames[i] + ") " + c.conditions[i].how + " (computed size)");

    std::string failed;
    if (!c.k_lambda.proved) failed += " k_lambda";
    for (std::size_t i = 0; i < c.conditions.size(); ++i)
        if (!c.conditions[i].holds) failed += " (" + kCondNames[i] + ")";
    if (!c.in_S) {
        c.path = "outside S";
        if (!c.direct_conditions_hold) {
            c.path = "none";
            c.reason = "outside S but the direct cross-check is not witnessed within the search bound:" + failed;
            return c;
        }
        c.notes.push_back("cross-check: conditions (a)-(e) hold directly");
    } else if (c.direct_conditions_hold) {
        c.path = "direct conditions";
    } else {
        c.path = "none";
        c.reason = "in S: not established:" + failed;
        return c;
    }

    c.L_splits = lam.ell == 2 ? true : L_splitting_test(prof, lam);
    const ImageType t = decide_psl_vs_pgl(rec.weight, rec.level, lam, c.L_splits);
    const std::string fn = field_name(lam.ell, lam.residue_degree);
    if (t == ImageType::Undetermined) {
        c.verdict = Verdict::Inconclusive;
        c.reason = "image is PSL2(" + fn + ") or PGL2(" + fn + "); k even, residue degree odd and ell | N";
        return c;
    }
    c.verdict = t == ImageType::PSL2 ? Verdict::PSL2 : Verdict::PGL2;
    c.group = to_string(c.verdict) + "(" + fn + ")";
    if (lam.ell == 2)
        c.reason = "characteristic 2, PSL2 = PGL2";
    else if (rec.weight % 2 == 1 || lam.residue_degree % 2 == 0)
        c.reason = std::string("lambda ") + (c.L_splits ? "splits" : "does not split") + " completely in L";
    else
        c.reason = "k even, residue degree odd, ell does not divide N";
    return c;
}

}  // namespace

std::vector<Certificate> certify(const NewformRecord& rec, const KLProfile& prof, const Choices& choices,
                                 const ExceptionalSet& S, std::uint64_t ell, const CertifyConfig& cfg) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
    std::vector<Certificate> out;
    for (const auto& lam : primes_of_K(prof, ell)) out.push_back(certify_one(rec, prof, choices, S, lam, cfg));
    return out;
}

std::vector<std::string> replay(const NewformRecord& rec, const KLProfile& prof, const ExceptionalSet& S,
                                const nlohmann::json& cert) {
    std::vector<std::string> bad;
    try {
        if (cert.at("schema") != "GalImageCertificateV1") return {"unknown certificate schema"};
        const std::uint64_t ell = cert.at("ell").get<std::uint64_t>();
        const std::string name = cert.at("lambda").get<std::string>();
        std::optional<PrimeData> lam;
        for (auto& l : primes_of_K(prof, ell))
            if (l.describe() == name) lam = l;
        if (!lam) return {"no prime " + name + " above " + std::to_string(ell)};
        const auto ctx = make_context(rec, prof, *lam, ~std::uint64_t{0});
        auto sample = [&](std::uint64_t p) -> const CriteriaContext::Sample* {
            for (const auto& s : ctx.samples)
                if (s.p == p) return &s;
            return nullptr;
        };
        if (cert.at("in_S").get<bool>() != S.contains(*lam)) bad.push_back("S membership differs");

        const auto& kp = cert.at("k_lambda");
        const bool proved = kp.at("proved").get<bool>();
        if (proved && lam->residue_degree > 1) {
            const auto* s = sample(kp.at("witness").get<std::uint64_t>());
            if (!s || element_degree(s->r) != lam->residue_degree) bad.push_back("k_lambda witness fails");
        }

        const auto& conds = cert.at("conditions");
        bool all = proved && !conds.empty();
        for (const auto& n : kCondNames) {
            if (!conds.contains(n)) continue;
            const auto& rc = conds.at(n);
            all = all && rc.at("holds").get<bool>();
            if (!rc.at("holds").get<bool>()) continue;
            const std::string how = rc.at("how");
            const int d = proved ? lam->residue_degree : kp.at("observed_degree").get<int>();
            if (n == "a") {
                const auto chars = enumerate_ff_chars(rec.level, ctx.bigF);
                const auto G = unit_group(rec.level);
                std::set<std::pair<int, std::string>> covered;
                for (const auto& w : rc.at("witnesses")) {
                    std::vector<FFElem> imgs;
                    for (const auto& c : w.at("chi")) imgs.push_back(elem_from(ctx.bigF, c));
                    const FFChar chi(G, ctx.bigF, imgs);
                    const auto* s = sample(w.at("p").get<std::uint64_t>());
                    if (!s || !a_witness(ctx, *s, chi, w.at("j").get<int>())) bad.push_back("(a) witness fails: " + w.dump());
                    covered.insert({w.at("j").get<int>(), chi.describe()});
                }
                for (int j = 0; j <= ctx.e0; ++j)
                    for (const auto& chi : chars)
                        if (!covered.count({j, chi.describe()})) bad.push_back("(a) character not covered: " + chi.describe());
            } else if (n == "b" || n == "e") {
                const std::uint64_t m = n == "b" ? ctx.calM : e_modulus(ctx);
                if (n == "e" && how.rfind("vacuous", 0) == 0) {
                    const BigInt q = klam_size(ctx, d);
                    if (q == 5 || q == 7) bad.push_back("(e) is not vacuous");
                    continue;
                }
                const auto G = unit_group(m);
                std::set<std::vector<int>> covered;
                for (const auto& w : rc.at("witnesses")) {
                    const QuadChar chi(G, w.at("chi").get<std::vector<int>>());
                    const auto* s = sample(w.at("p").get<std::uint64_t>());
                    const bool ok = s && (n == "b" ? b_witness(*s, chi) : e_witness(*s, chi));
                    if (!ok) bad.push_back("(" + n + ") witness fails: " + w.dump());
                    covered.insert(chi.signs());
                }
                for (const auto& chi : enumerate_quadratic_chars(m))
                    if (!covered.count(chi.signs())) bad.push_back("(" + n + ") character not covered: " + chi.describe());
            } else {
                // (c), (d): recompute the clause, or re-check the witness.
                const auto fresh = n == "c" ? check_condition_c(ctx, d) : check_condition_d(ctx, d);
                if (how == "witnesses") {
                    const auto* s = sample(rc.at("witnesses").at(0).at("p").get<std::uint64_t>());
                    if (!s || !(n == "c" ? c_witness(*s) : d_witness(*s))) bad.push_back("(" + n + ") witness fails");
                } else if (fresh.how != how) {
                    bad.push_back("(" + n + ") clause does not apply: " + how);
                }
            }
        }
        if (all != cert.at("direct_conditions_hold").get<bool>()) bad.push_back("direct_conditions_hold inconsistent");

        const std::string verdict = cert.at("verdict");
        if (verdict != "Inconclusive") {
            if (!all) bad.push_back("verdict without a complete witness list");
            const bool splits = ell == 2 ? true : L_splitting_test(prof, *lam);
            const auto t = decide_psl_vs_pgl(rec.weight, rec.level, *lam, splits);
            if (to_string(t) != verdict) bad.push_back("verdict " + verdict + " but the decision gives " + to_string(t));
        }
    } catch (const std::exception& e) {
        bad.push_back(std::string("malformed certificate: ") + e.what());
    }
    return bad;
}

}  // namespace galimage
