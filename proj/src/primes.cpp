#include "galimage/primes.hpp"

#include <optional>
#include <stdexcept>

#include "galimage/zfactor.hpp"

namespace galimage {

std::string PrimeData::describe() const {
    return "(" + std::to_string(ell) + ", " + local_factor.lift().str("t") + ")";
}

bool order_maximal_at(const ZPoly& minpoly, std::uint64_t ell) {
    const BigInt disc = poly_discriminant(minpoly);
    const BigInt l2 = BigInt(static_cast<unsigned long>(ell)) * ell;
    if (!mpz_divisible_p(disc.get_mpz_t(), l2.get_mpz_t())) return true;
    return dedekind_maximal(minpoly, ell);
}

namespace {

// Integral minimal polynomial of alpha when alpha generates K, else empty.
std::optional<ZPoly> full_integral_minpoly(const NFElement& alpha) {
    QPoly m = minpoly_over_Q(alpha);
    if (m.degree() != alpha.field()->degree()) return std::nullopt;
    for (const auto& c : m.coeffs())
        if (c.get_den() != 1) return std::nullopt;
    return to_zpoly(m);
}

std::vector<PrimeData> build(const NumberFieldPtr& k, std::uint64_t ell, const NFElement& gen, const ZPoly& mp) {
    const int d = k->degree();
    QMatrix basis(static_cast<std::size_t>(d), QVector(static_cast<std::size_t>(d)));
    NFElement p = k->from_rational(1);
    for (int j = 0; j < d; ++j) {
        auto c = p.coords();
        for (int i = 0; i < d; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)];
        p *= gen;
    }
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("generator does not span the field");
    auto fac = factor_mod_ell(mp, ell);
    std::vector<PrimeData> out;
    for (const auto& [g, e] : fac) {
        PrimeData pd;
        pd.ell = ell;
        pd.field = k;
        pd.generator = gen;
        pd.generator_minpoly = mp;
        pd.to_generator_basis = *inv;
        pd.local_factor = g;
        pd.residue_degree = g.degree();
        pd.ramification = e;
        pd.primes_above_ell = static_cast<int>(fac.size());
        pd.residue_field = g.degree() == 1 ? FiniteField::prime_field(ell) : FiniteField::create(g);
        out.push_back(std::move(pd));
    }
    return out;
}

}  // namespace

std::vector<PrimeData> primes_above(const NumberFieldPtr& k, std::uint64_t ell, const PrimesAboveOptions& opts) {
    if (!is_prime_u64(ell)) throw std::invalid_argument(std::to_string(ell) + " is not prime");
    const NFElement theta = k->gen();
    if (k->degree() == 1 || opts.assume_maximal || order_maximal_at(k->poly(), ell))
        return build(k, ell, theta, k->poly());
    for (const auto& cand : opts.candidate_generators) {
        auto mp = full_integral_minpoly(cand);
        if (mp && order_maximal_at(*mp, ell)) return build(k, ell, cand, *mp);
    }
    if (opts.search_overorder) {
        // Descent on v_ell(disc): replace the generator by beta/ell or gen + beta/ell, beta in Z[gen].
        const int d = k->degree();
        const BigInt L(static_cast<unsigned long>(ell));
        double count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<double>(ell);
        if (count <= 2e5) {
            NFElement g = theta;
            ZPoly gm = k->poly();
            int v = valuation(poly_discriminant(gm), L);
            for (int round = 0; round < 4 * v + 4; ++round) {
                std::optional<std::pair<NFElement, ZPoly>> best;
                int best_v = v;
                std::vector<NFElement> pw{k->from_rational(1)};
                for (int i = 1; i < d; ++i) pw.push_back(pw.back() * g);
                for (std::uint64_t idx = 1; idx < static_cast<std::uint64_t>(count); ++idx) {
                    std::uint64_t t = idx;
                    NFElement beta = k->from_rational(0);
                    for (int i = 0; i < d; ++i) {
                        if (t % ell) beta += pw[static_cast<std::size_t>(i)] * BigRat(BigInt(static_cast<unsigned long>(t % ell)), L);
                        t /= ell;
                    }
                    if (!is_integral(beta)) continue;
                    for (const NFElement& cand : {beta, g + beta}) {
                        auto mp = full_integral_minpoly(cand);
                        if (!mp) continue;
                        const int cv = valuation(poly_discriminant(*mp), L);
                        if (cv < best_v) {
                            best_v = cv;
                            best = std::make_pair(cand, *mp);
                        }
                    }
                }
                if (!best) break;
                g = best->first;
                gm = best->second;
                v = best_v;
                if (order_maximal_at(gm, ell)) return build(k, ell, g, gm);
            }
        }
    }
    throw std::domain_error("index-obstructed prime " + std::to_string(ell) + ": no " + std::to_string(ell) +
                            "-maximal monogenic order found");
}

FFElem reduce_mod(const NFElement& x, const PrimeData& lam) {
    const auto c = mat_vec(lam.to_generator_basis, x.coords());
    std::vector<std::uint64_t> r;
    for (const auto& v : c) {
        std::uint64_t den = mod_u64(BigInt(v.get_den()), lam.ell);
        if (den == 0) throw std::domain_error("non-integral at lambda " + lam.describe());
        r.push_back(mulmod_u64(mod_u64(BigInt(v.get_num()), lam.ell), invmod_u64(den, lam.ell), lam.ell));
    }
    // Evaluate sum r_j t^j in F_lambda, t the class of the generator.
    const FpPoly poly(lam.ell, r);
    if (lam.residue_degree == 1) {
        const std::uint64_t root = (lam.ell - lam.local_factor[0] % lam.ell) % lam.ell;
        return lam.residue_field->from_int(BigInt(static_cast<unsigned long>(poly.eval(root))));
    }
    return lam.residue_field->from_poly(poly);
}

FFElem reduce_mod(const BigRat& x, const PrimeData& lam) {
    std::uint64_t den = mod_u64(BigInt(x.get_den()), lam.ell);
    if (den == 0) throw std::domain_error("non-integral at lambda " + lam.describe());
    return lam.residue_field->from_int(
        BigInt(static_cast<unsigned long>(mulmod_u64(mod_u64(BigInt(x.get_num()), lam.ell), invmod_u64(den, lam.ell), lam.ell))));
}

CompletionSquare valuation_and_square_in_completion(const NFElement& x, const PrimeData& lam) {
    if (x.is_zero()) return {INT_MAX, true};
    if (lam.ell == 2) throw std::domain_error("even-characteristic: completion squares at 2 are not supported");
    const BigInt L(static_cast<unsigned long>(lam.ell));
    const auto& k = x.field();
    if (k->degree() == 1) {
        BigRat v = x.rational_value();
        int e = valuation(v, L);
        BigRat u = v / pow(BigRat(L), e);
        return {e, e % 2 == 0 && is_square_ff(reduce_mod(u, lam))};
    }
    if (!lam.unique_above()) {
        FFElem r;
        try {
            r = reduce_mod(x, lam);
        } catch (const std::domain_error&) {
            throw std::domain_error("valuation unsupported: " + std::to_string(lam.ell) + " splits and x is not integral");
        }
        if (r.is_zero()) throw std::domain_error("valuation unsupported: " + std::to_string(lam.ell) + " splits and x vanishes at lambda");
        return {0, is_square_ff(r)};
    }
    const int v = valuation(nf_norm(x), L) / lam.residue_degree;
    if (v == 0) return {0, is_square_ff(reduce_mod(x, lam))};
    if (lam.ramification == 1) {
        // Inert: ell is a uniformiser.
        NFElement u = x * pow(BigRat(L), -v);
        return {v, v % 2 == 0 && is_square_ff(reduce_mod(u, lam))};
    }
    // Totally ramified: look for a uniformiser among gen - a.
    for (std::uint64_t a = 0; a < lam.ell; ++a) {
        NFElement pi = lam.generator - k->from_rational(BigRat(BigInt(static_cast<unsigned long>(a))));
        if (valuation(nf_norm(pi), L) != lam.residue_degree) continue;
        try {
            NFElement u = x * pi.pow(-v);
            return {v, v % 2 == 0 && is_square_ff(reduce_mod(u, lam))};
        } catch (const std::domain_error&) {
            break;
        }
    }
    throw std::domain_error("valuation unsupported: no usable uniformiser at " + lam.describe());
}

}  // namespace galimage
