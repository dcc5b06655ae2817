#include "galimage/fp_poly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace galimage {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero modulo p");
    return powmod_u64(a, p - 2, p);
}

namespace {

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

}  // namespace

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
}

FpPoly FpPoly::from_zpoly(const ZPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    for (const auto& v : f.coeffs()) c.push_back(mod_u64(v, p));
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::from_qpoly(const QPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    for (const auto& v : f.coeffs()) {
        std::uint64_t d = mod_u64(BigInt(v.get_den()), p);
        if (d == 0) throw std::domain_error("denominator divisible by " + std::to_string(p));
        c.push_back(mulmod_u64(mod_u64(BigInt(v.get_num()), p), invmod_u64(d, p), p));
    }
    return FpPoly(p, std::move(c));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly& FpPoly::operator+=(const FpPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = addm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = subm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

FpPoly FpPoly::scaled(std::uint64_t s) const {
    FpPoly out = *this;
    s %= p_;
    for (auto& v : out.c_) v = mulmod_u64(v, s, p_);
    out.trim();
    return out;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    const std::uint64_t p = a.p_;
    std::vector<std::uint64_t> out(a.c_.size() + b.c_.size() - 1, 0);
    if (p < (1ull << 31)) {
        // Products fit in 62 bits; accumulate in 128 bits and reduce once.
        std::vector<unsigned __int128> acc(out.size(), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a.c_[i]) * b.c_[j];
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % p);
    } else {
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = addm(out[i + j], mulmod_u64(a.c_[i], b.c_[j], p), p);
    }
    return FpPoly(p, std::move(out));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    x %= p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addm(mulmod_u64(acc, x, p_), *it, p_);
    return acc;
}

FpPoly FpPoly::derivative() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(mulmod_u64(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(invmod_u64(lead(), p_));
}

ZPoly FpPoly::lift(bool symmetric) const {
    std::vector<BigInt> out;
    for (auto v : c_) {
        BigInt b(static_cast<unsigned long>(v));
        if (symmetric && v > p_ / 2) b -= BigInt(static_cast<unsigned long>(p_));
        out.push_back(b);
    }
    return ZPoly(std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const std::uint64_t p = a.modulus();
    if (a.degree() < b.degree()) return {FpPoly(p), a};
    std::vector<std::uint64_t> r = a.coeffs();
    std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    const std::uint64_t inv = invmod_u64(b.lead(), p);
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        std::uint64_t f = mulmod_u64(r[static_cast<std::size_t>(i)], inv, p);
        q[static_cast<std::size_t>(i - db)] = f;
        if (!f) continue;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - db + j)];
            slot = subm(slot, mulmod_u64(f, b[j], p), p);
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpXgcd xgcd(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.modulus();
    FpPoly r0 = a, r1 = b, s0 = FpPoly::constant(p, 1), s1(p), t0(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s2 = s0 - q * s1;
        FpPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    std::uint64_t inv = invmod_u64(r0.lead(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& m) {
    if (e < 0) throw std::domain_error("negative exponent");
    FpPoly result = FpPoly::constant(base.modulus(), 1) % m;
    FpPoly b = base % m;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
    }
    return result;
}

std::vector<FpFactor> squarefree_factor(const FpPoly& f0) {
    const std::uint64_t p = f0.modulus();
    std::vector<FpFactor> out;
    FpPoly f = f0.monic();
    if (f.degree() < 1) return out;
    std::function<void(const FpPoly&, int)> rec = [&](const FpPoly& g, int mult) {
        if (g.degree() < 1) return;
        FpPoly c = gcd(g, g.derivative());
        FpPoly w = g / c;
        int i = 1;
        while (!w.is_one()) {
            FpPoly y = gcd(w, c);
            FpPoly z = w / y;
            if (z.degree() > 0) out.push_back({z, i * mult});
            ++i;
            w = y;
            c = c / y;
        }
        if (c.degree() > 0) {
            // c is a p-th power: take the p-th root coefficientwise (Frobenius is identity on F_p).
            std::vector<std::uint64_t> root;
            for (int j = 0; j <= c.degree(); j += static_cast<int>(p)) root.push_back(c[j]);
            rec(FpPoly(p, std::move(root)), mult * static_cast<int>(p));
        }
    };
    rec(f, 1);
    return out;
}

std::vector<std::pair<FpPoly, int>> distinct_degree_factor(const FpPoly& f0) {
    const std::uint64_t p = f0.modulus();
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = f0.monic();
    FpPoly h = FpPoly::x(p) % f;
    const FpPoly x = FpPoly::x(p);
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, BigInt(static_cast<unsigned long>(p)), f);
        FpPoly g = gcd(f, h - x);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

std::vector<FpPoly> equal_degree_factor(const FpPoly& f, int d, std::mt19937_64& rng) {
    const std::uint64_t p = f.modulus();
    if (f.degree() == d) return {f.monic()};
    if (f.degree() < d || f.degree() % d != 0) throw std::logic_error("equal_degree_factor: bad degree");
    BigInt q = pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    while (true) {
        std::vector<std::uint64_t> rc(static_cast<std::size_t>(f.degree()));
        for (auto& v : rc) v = dist(rng);
        FpPoly a(p, rc);
        if (a.degree() < 1) continue;
        FpPoly g = gcd(a, f);
        if (!g.is_one() && g.degree() < f.degree()) {
            auto l = equal_degree_factor(g, d, rng);
            auto r = equal_degree_factor(f / g, d, rng);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
        FpPoly b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            b = a % f;
            FpPoly t = b;
            for (int i = 1; i < d; ++i) {
                t = mulmod(t, t, f);
                b += t;
            }
        } else {
            b = powmod(a, (q - 1) / 2, f) - FpPoly::constant(p, 1);
        }
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto l = equal_degree_factor(g, d, rng);
            auto r = equal_degree_factor(f / g, d, rng);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
    }
}

std::vector<FpFactor> factor(const FpPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    std::uint64_t h = seed * 0x9e3779b97f4a7c15ull ^ f.modulus();
    for (auto c : f.coeffs()) h = (h ^ c) * 0x100000001b3ull + 0x7f4a7c15ull;
    std::mt19937_64 rng(h);
    std::vector<FpFactor> out;
    for (const auto& [part, mult] : squarefree_factor(f)) {
        for (const auto& [prod, d] : distinct_degree_factor(part)) {
            for (auto& g : equal_degree_factor(prod, d, rng)) out.push_back({g, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.factor != b.factor) return a.factor < b.factor;
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

std::vector<FpFactor> factor_mod_ell(const ZPoly& f, std::uint64_t ell, std::uint64_t seed) {
    if (f.is_zero() || mod_u64(f.lead(), ell) == 0)
        throw std::domain_error("prime " + std::to_string(ell) + " divides the leading coefficient");
    return factor(FpPoly::from_zpoly(f, ell), seed);
}

bool is_irreducible(const FpPoly& f0) {
    if (f0.degree() < 1) return false;
    FpPoly f = f0.monic();
    const std::uint64_t p = f.modulus();
    const int n = f.degree();
    // Rabin's test.
    const FpPoly x = FpPoly::x(p);
    auto frob_power = [&](int k) {
        FpPoly h = x % f;
        for (int i = 0; i < k; ++i) h = powmod(h, BigInt(static_cast<unsigned long>(p)), f);
        return h;
    };
    if (frob_power(n) != x % f) return false;
    for (auto [q, e] : factor_u64(static_cast<std::uint64_t>(n))) {
        FpPoly h = frob_power(n / static_cast<int>(q));
        if (!gcd(f, h - x).is_one()) return false;
    }
    return true;
}

FpPoly find_irreducible(std::uint64_t p, int d) {
    if (d < 1) throw std::domain_error("degree must be positive");
    if (d == 1) return FpPoly::x(p);
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d) + 1, 0);
    c.back() = 1;
    // Odometer over the lower coefficients, constant term fastest.
    while (true) {
        std::size_t i = 0;
        while (i < static_cast<std::size_t>(d)) {
            if (++c[i] < p) break;
            c[i] = 0;
            ++i;
        }
        if (i == static_cast<std::size_t>(d)) throw std::logic_error("no irreducible polynomial found");
        FpPoly f(p, c);
        if (is_irreducible(f)) return f;
    }
}

}  // namespace galimage
