#include "galimage/zfactor.hpp"

#include <algorithm>
#include <stdexcept>

namespace galimage {

ZPoly reduce_coeffs(const ZPoly& f, const BigInt& m) {
    std::vector<BigInt> c;
    for (const auto& v : f.coeffs()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        c.push_back(r);
    }
    return ZPoly(std::move(c));
}

ZPoly symmetric_coeffs(const ZPoly& f, const BigInt& m) {
    std::vector<BigInt> c;
    const BigInt half = m / 2;
    for (const auto& v : f.coeffs()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        if (r > half) r -= m;
        c.push_back(r);
    }
    return ZPoly(std::move(c));
}

namespace {

// Division by a monic integer polynomial.
std::pair<ZPoly, ZPoly> divmod_monic(const ZPoly& a, const ZPoly& b) {
    if (a.degree() < b.degree()) return {ZPoly(), a};
    std::vector<BigInt> r = a.coeffs();
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), BigInt(0));
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        BigInt f = r[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[j];
    }
    r.resize(static_cast<std::size_t>(db));
    return {ZPoly(std::move(q)), ZPoly(std::move(r))};
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
    BigInt out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("non-invertible element in Hensel lifting");
    return out;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic -> same mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const BigInt& m) {
    const BigInt m2 = m * m;
    ZPoly e = reduce_coeffs(f - g * h, m2);
    auto [q, r] = divmod_monic(reduce_coeffs(s * e, m2), h);
    q = reduce_coeffs(q, m2);
    r = reduce_coeffs(r, m2);
    ZPoly gs = reduce_coeffs(g + t * e + q * g, m2);
    ZPoly hs = reduce_coeffs(h + r, m2);
    ZPoly b = reduce_coeffs(s * gs + t * hs - ZPoly::constant(1), m2);
    auto [c, d] = divmod_monic(reduce_coeffs(s * b, m2), hs);
    ZPoly ss = reduce_coeffs(s - d, m2);
    ZPoly ts = reduce_coeffs(t - t * b - c * gs, m2);
    g = std::move(gs);
    h = std::move(hs);
    s = std::move(ss);
    t = std::move(ts);
}

FpPoly product(const std::vector<FpPoly>& u, std::size_t lo, std::size_t hi, std::uint64_t p) {
    FpPoly out = FpPoly::constant(p, 1);
    for (std::size_t i = lo; i < hi; ++i) out = out * u[i];
    return out;
}

std::vector<ZPoly> lift_rec(const ZPoly& f, const std::vector<FpPoly>& u, std::size_t lo, std::size_t hi,
                            std::uint64_t p, const BigInt& pk) {
    if (hi - lo == 1) {
        BigInt inv = inverse_mod(f.lead(), pk);
        return {reduce_coeffs(f * inv, pk)};
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    FpPoly g0 = product(u, lo, mid, p).scaled(mod_u64(f.lead(), p));
    FpPoly h0 = product(u, mid, hi, p);
    FpXgcd x = xgcd(g0, h0);
    if (!x.g.is_one()) throw std::logic_error("Hensel lifting: factors not coprime");
    ZPoly g = g0.lift(), h = h0.lift(), s = x.s.lift(), t = x.t.lift();
    BigInt m(static_cast<unsigned long>(p));
    while (m < pk) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    g = reduce_coeffs(g, pk);
    h = reduce_coeffs(h, pk);
    auto left = lift_rec(g, u, lo, mid, p, pk);
    auto right = lift_rec(h, u, mid, hi, p, pk);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

bool zpoly_less(const ZPoly& a, const ZPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Squarefree primitive f with positive leading coefficient.
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
    const int n = f.degree();
    if (n <= 1) return {f};
    // Good prime with the fewest modular factors among a handful of candidates.
    std::uint64_t best_p = 0;
    std::vector<FpPoly> best_u;
    int tried = 0;
    for (std::uint64_t p : primes_up_to(5000)) {
        if (p < 3 || mod_u64(f.lead(), p) == 0) continue;
        FpPoly fp = FpPoly::from_zpoly(f, p);
        if (gcd(fp, fp.derivative()).degree() > 0) continue;
        auto fac = factor(fp);
        if (best_p == 0 || fac.size() < best_u.size()) {
            best_p = p;
            best_u.clear();
            for (auto& [g, m] : fac) best_u.push_back(g);
        }
        if (best_u.size() == 1) return {f};
        if (++tried == 5) break;
    }
    if (best_p == 0) throw std::logic_error("no good prime found");
    const std::uint64_t p = best_p;

    // Mignotte-style bound on coefficients of factors of lc * (factor).
    BigInt norm2 = 0;
    for (const auto& v : f.coeffs()) norm2 += v * v;
    BigInt norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    BigInt bound = pow(BigInt(2), static_cast<unsigned long>(n)) * norm * abs(f.lead()) * 2;
    int k = 1;
    BigInt pk(static_cast<unsigned long>(p));
    while (pk <= bound) {
        pk *= p;
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift(f, best_u, p, k);

    std::vector<ZPoly> out;
    ZPoly g = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly cand = ZPoly::constant(g.lead());
            for (auto i : idx) cand = reduce_coeffs(cand * pool[i], pk);
            cand = primitive_part(symmetric_coeffs(cand, pk));
            ZPoly quo;
            if (cand.degree() > 0 && exact_divide(g, cand, &quo)) {
                out.push_back(cand);
                g = primitive_part(quo);
                std::vector<ZPoly> rest;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < s && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    rest.push_back(pool[i]);
                }
                pool = std::move(rest);
                found = true;
                break;
            }
            // Next combination.
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (g.degree() > 0) out.push_back(primitive_part(g));
    return out;
}

}  // namespace

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& u, std::uint64_t p, int k) {
    if (u.empty()) return {};
    BigInt pk = pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(k));
    return lift_rec(reduce_coeffs(f, pk), u, 0, u.size(), p, pk);
}

std::vector<ZFactor> factor_over_q(const QPoly& f) { return factor_over_q(primitive_part(f)); }

std::vector<ZFactor> factor_over_q(const ZPoly& f0) {
    if (f0.degree() < 1) throw std::domain_error("factor_over_q needs a non-constant polynomial");
    ZPoly f = primitive_part(f0);
    std::vector<ZFactor> out;
    // Yun's squarefree decomposition over Q.
    QPoly a = to_qpoly(f);
    QPoly c = gcd(a, a.derivative());
    QPoly w = a / c;
    int i = 1;
    while (w.degree() > 0) {
        QPoly y = gcd(w, c);
        QPoly z = w / y;
        if (z.degree() > 0)
            for (auto& g : factor_squarefree(primitive_part(z))) out.push_back({g, i});
        ++i;
        w = y;
        c = c / y;
    }
    std::sort(out.begin(), out.end(), [](const ZFactor& x, const ZFactor& y) {
        if (zpoly_less(x.factor, y.factor)) return true;
        if (zpoly_less(y.factor, x.factor)) return false;
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

bool is_irreducible_over_q(const ZPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_over_q(f);
    return fac.size() == 1 && fac[0].multiplicity == 1;
}

bool dedekind_maximal(const ZPoly& f, std::uint64_t p) {
    if (!f.is_monic()) throw std::domain_error("dedekind_maximal needs a monic polynomial");
    auto fac = factor_mod_ell(f, p);
    FpPoly g = FpPoly::constant(p, 1), h = FpPoly::constant(p, 1);
    for (auto& [u, e] : fac) {
        g = g * u;
        for (int i = 1; i < e; ++i) h = h * u;
    }
    ZPoly F = g.lift() * h.lift() - f;
    ZPoly Fq;
    std::vector<BigInt> c;
    const BigInt P(static_cast<unsigned long>(p));
    for (const auto& v : F.coeffs()) {
        if (!mpz_divisible_p(v.get_mpz_t(), P.get_mpz_t())) throw std::logic_error("Dedekind: lift mismatch");
        c.push_back(v / P);
    }
    FpPoly Fbar = FpPoly::from_zpoly(ZPoly(std::move(c)), p);
    FpPoly d = gcd(gcd(Fbar, g), h);
    return d.degree() == 0;
}

}  // namespace galimage
