#include "galimage/image.hpp"

#include <stdexcept>

namespace galimage {

FindKResult find_K(const NewformRecord& rec, std::uint64_t search_bound) {
    const std::uint64_t bound = std::min<std::uint64_t>(search_bound, rec.precision());
    FindKResult best{0, nullptr, {}, 0, true};
    int best_deg = 0;
    std::vector<NFElement> rs;
    for (std::uint64_t p : primes_up_to(bound)) {
        if (rec.level % p == 0) continue;
        NFElement r = r_invariant(rec, p);
        const int deg = minpoly_over_Q(r).degree();
        ++best.sampled;
        if (deg > best_deg) {
            best_deg = deg;
            best.q = p;
            best.r_q = r;
        }
        rs.push_back(std::move(r));
    }
    if (best.sampled == 0) throw DataError("insufficient coefficients: no prime p <= " + std::to_string(bound) + " with p not dividing N");
    for (const auto& r : rs)
        if (!express_in(r, best.r_q)) {
            best.stable = false;
            break;
        }
    const QPoly m = minpoly_over_Q(best.r_q);
    best.K = m.degree() == 1 ? NumberField::rationals() : NumberField::create(to_zpoly(m), "K");
    return best;
}

std::vector<bool> generated_subgroup(const std::vector<std::uint64_t>& gens, std::uint64_t M) {
    std::vector<bool> in(M, false);
    std::vector<std::uint64_t> elems{1 % M};
    in[1 % M] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::uint64_t g : gens) {
            const std::uint64_t x = mulmod_u64(elems[i], g % M, M);
            if (!in[x]) {
                in[x] = true;
                elems.push_back(x);
            }
        }
    return in;
}

std::vector<std::uint64_t> choose_generating_primes(const NewformRecord& rec, std::uint64_t M) {
    std::vector<std::uint64_t> chosen;
    if (M <= 2) return chosen;
    const std::uint64_t target = euler_phi(M);
    auto size_of = [&](const std::vector<bool>& t) {
        std::uint64_t c = 0;
        for (bool b : t) c += b;
        return c;
    };
    std::uint64_t have = 1;
    for (std::uint64_t p : primes_up_to(rec.precision())) {
        if (rec.level % p == 0 || M % p == 0) continue;
        if (r_invariant(rec, p).is_zero()) continue;
        auto trial = chosen;
        trial.push_back(p);
        const std::uint64_t s = size_of(generated_subgroup(trial, M));
        if (s > have) {
            chosen = std::move(trial);
            have = s;
            if (have == target) return chosen;
        }
    }
    throw DataError("exhausted coefficient supply before generating (Z/" + std::to_string(M) + "Z)^x");
}

KLProfile analyze(const NewformRecord& rec, std::uint64_t search_bound) {
    KLProfile prof;
    const auto fk = find_K(rec, search_bound);
    prof.K = fk.K;
    prof.k_degree = fk.K->degree();
    prof.generator_prime = fk.q;
    prof.sampled_primes = fk.sampled;
    prof.degree_stable = fk.stable;
    if (!fk.stable) throw DataError("inconclusive K: sampled r_p do not all lie in Q(r_" + std::to_string(fk.q) + ")");
    if (rec.field->degree() % prof.k_degree != 0) throw std::logic_error("[K:Q] does not divide [E:Q]");
    if (prof.k_degree < rec.field->degree())
        prof.assumptions.push_back("[K:Q] = " + std::to_string(prof.k_degree) + " taken from r_p, p <= " +
                                   std::to_string(std::min<std::uint64_t>(search_bound, rec.precision())) +
                                   " (all lie in Q(r_" + std::to_string(fk.q) + "))");
    const std::uint64_t bound = std::min<std::uint64_t>(search_bound, rec.precision());
    for (std::uint64_t p : primes_up_to(rec.precision())) {
        if (rec.level % p == 0) continue;
        const NFElement r = r_invariant(rec, p);
        auto c = express_in(r, fk.r_q);
        if (!c) {
            if (p <= bound) throw std::logic_error("r_p outside K after stabilisation");
            continue;
        }
        prof.r.emplace(p, eval(*c, prof.K->gen()));
    }
    prof.M = rec.level % 2 ? rec.level : 4 * rec.level;
    prof.generating_primes = choose_generating_primes(rec, prof.M);
    prof.L_equals_K = true;
    for (std::uint64_t p : prof.generating_primes) {
        auto s = sqrt_in_field(prof.r_in_K(p));
        if (!s) {
            prof.L_equals_K = false;
            prof.sqrt_witnesses.clear();
            break;
        }
        prof.sqrt_witnesses.push_back(*s);
    }
    return prof;
}

std::vector<NFElement> alternate_generators(const KLProfile& prof, std::size_t limit) {
    std::vector<NFElement> out;
    for (const auto& [p, r] : prof.r) {
        if (out.size() >= limit) break;
        if (p == prof.generator_prime) continue;
        if (minpoly_over_Q(r).degree() == prof.k_degree) out.push_back(r);
    }
    return out;
}

std::vector<PrimeData> primes_of_K(const KLProfile& prof, std::uint64_t ell) {
    PrimesAboveOptions opts;
    opts.candidate_generators = alternate_generators(prof);
    return primes_above(prof.K, ell, opts);
}

bool L_splitting_test(const KLProfile& prof, const PrimeData& lam) {
    if (prof.L_equals_K) return true;
    if (lam.ell == 2) throw std::domain_error("even-characteristic: splitting in L is only decided for odd lambda");
    for (std::uint64_t p : prof.generating_primes)
        if (!valuation_and_square_in_completion(prof.r_in_K(p), lam).is_square) return false;
    return true;
}

std::string to_string(ImageType t) {
    switch (t) {
        case ImageType::PSL2:
            return "PSL2";
        case ImageType::PGL2:
            return "PGL2";
        default:
            return "Undetermined";
    }
}

ImageType decide_psl_vs_pgl(int k, std::uint64_t N, const PrimeData& lam, bool splits) {
    // PSL2(F_2^n) = PGL2(F_2^n).
    if (lam.ell == 2) return ImageType::PSL2;
    if (k % 2 == 1 || lam.residue_degree % 2 == 0) return splits ? ImageType::PSL2 : ImageType::PGL2;
    if (N % lam.ell != 0) return ImageType::PGL2;
    return ImageType::Undetermined;
}

nlohmann::json to_json(const KLProfile& prof) {
    nlohmann::json j;
    std::vector<std::string> kp;
    for (const auto& c : prof.K->poly().coeffs()) kp.push_back(to_string(c));
    j["K_poly"] = kp;
    j["K_degree"] = prof.k_degree;
    j["generator_prime"] = prof.generator_prime;
    j["sampled_primes"] = prof.sampled_primes;
    j["degree_stable"] = prof.degree_stable;
    j["assumptions"] = prof.assumptions;
    j["M"] = prof.M;
    j["generating_primes"] = prof.generating_primes;
    j["L_equals_K"] = prof.L_equals_K;
    nlohmann::json w = nlohmann::json::array();
    for (std::size_t i = 0; i < prof.sqrt_witnesses.size(); ++i)
        w.push_back({{"p", prof.generating_primes[i]},
                      {"r_p", prof.r_in_K(prof.generating_primes[i]).str("x")},
                      {"sqrt", prof.sqrt_witnesses[i].str("x")}});
    j["square_witnesses"] = w;
    return j;
}

}  // namespace galimage
