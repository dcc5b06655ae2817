#include "galimage/poly.hpp"

namespace galimage {

QPoly to_qpoly(const ZPoly& p) {
    std::vector<BigRat> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return QPoly(std::move(c));
}

ZPoly to_zpoly(const QPoly& p) {
    std::vector<BigInt> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) {
        if (v.get_den() != 1) throw std::domain_error("polynomial has non-integral coefficient " + to_string(v));
        c.emplace_back(v.get_num());
    }
    return ZPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly(), a};
    std::vector<BigRat> r = a.coeffs();
    std::vector<BigRat> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), BigRat(0));
    const BigRat inv = 1 / b.lead();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        BigRat f = r[static_cast<std::size_t>(i)] * inv;
        q[static_cast<std::size_t>(i - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[j];
    }
    r.resize(static_cast<std::size_t>(db));
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }
QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly make_monic(const QPoly& a) {
    if (a.is_zero()) return a;
    return a * (1 / a.lead());
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

QXgcd xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s2 = s0 - q * s1;
        QPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    BigRat inv = 1 / r0.lead();
    return {r0 * inv, s0 * inv, t0 * inv};
}

BigInt content(const ZPoly& p) {
    BigInt g = 0;
    for (const auto& v : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    if (p.is_zero()) return p;
    BigInt g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<BigInt> c;
    for (const auto& v : p.coeffs()) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        c.push_back(q);
    }
    return ZPoly(std::move(c));
}

ZPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return ZPoly();
    BigInt l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<BigInt> c;
    for (const auto& v : p.coeffs()) c.push_back(BigInt(v.get_num() * (l / v.get_den())));
    return primitive_part(ZPoly(std::move(c)));
}

bool exact_divide(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) {
        if (quotient) *quotient = ZPoly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<BigInt> r = a.coeffs();
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), BigInt(0));
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        const BigInt& top = r[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) return false;
        BigInt f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[j];
    }
    for (int i = 0; i < db; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return false;
    if (quotient) *quotient = ZPoly(std::move(q));
    return true;
}

BigRat resultant(const QPoly& a0, const QPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    QPoly a = a0, b = b0;
    BigRat acc = 1;
    while (true) {
        const int da = a.degree(), db = b.degree();
        if (da == 0) return acc * pow(a.lead(), db);
        if (db == 0) return acc * pow(b.lead(), da);
        // Res(a,b) = (-1)^(da*db) Res(b,a) and Res(b,a) = lc(b)^(da-dr) Res(b, a mod b).
        QPoly r = a % b;
        if (r.is_zero()) return 0;
        if ((da * db) % 2 == 1) acc = -acc;
        acc *= pow(b.lead(), da - r.degree());
        a = std::move(b);
        b = std::move(r);
    }
}

BigInt resultant(const ZPoly& a, const ZPoly& b) {
    BigRat r = resultant(to_qpoly(a), to_qpoly(b));
    return BigInt(r.get_num());
}

BigInt poly_discriminant(const ZPoly& p) {
    const int n = p.degree();
    if (n < 1) throw std::domain_error("discriminant needs degree >= 1");
    if (n == 1) return 1;
    BigRat r = resultant(to_qpoly(p), to_qpoly(p.derivative())) / BigRat(p.lead());
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return BigInt(r.get_num());
}

QPoly interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys) {
    const std::size_t n = xs.size();
    std::vector<BigRat> dd = ys;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    }
    QPoly out;
    for (std::size_t i = n; i-- > 0;) {
        out = out * QPoly{-xs[i], BigRat(1)} + QPoly::constant(dd[i]);
    }
    return out;
}

QPoly taylor_shift(const QPoly& p, const BigRat& shift) {
    QPoly out;
    const QPoly lin{shift, BigRat(1)};
    for (int i = p.degree(); i >= 0; --i) out = out * lin + QPoly::constant(p[i]);
    return out;
}

}  // namespace galimage
