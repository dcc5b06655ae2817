#include "galimage/bigint.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace galimage {

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
    return out;
}

BigRat parse_bigrat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_bigint(text));
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    BigRat out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

std::string to_string(const BigRat& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

BigRat pow(const BigRat& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("negative power of zero");
        BigRat inv = 1 / base;
        return pow(inv, -exponent);
    }
    BigRat out(pow(BigInt(base.get_num()), static_cast<unsigned long>(exponent)),
               pow(BigInt(base.get_den()), static_cast<unsigned long>(exponent)));
    out.canonicalize();
    return out;
}

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 platform expected");

std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) { return mpz_fdiv_ui(x.get_mpz_t(), m); }

int valuation(const BigInt& x, const BigInt& p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    BigInt t = abs(x);
    int v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation(const BigRat& x, const BigInt& p) {
    return valuation(BigInt(x.get_num()), p) - valuation(BigInt(x.get_den()), p);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    BigInt y = seed + 1, c = seed + 3, g = 1, r = 1, q = 1, x, ys;
    const unsigned long m = 128;
    auto f = [&](const BigInt& v) {
        BigInt t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (BigInt i = 0; i < r; ++i) y = f(y);
        BigInt k = 0;
        while (k < r && g == 1) {
            ys = y;
            BigInt lim = r - k < m ? BigInt(r - k) : BigInt(m);
            for (BigInt i = 0; i < lim; ++i) {
                y = f(y);
                q = q * abs(x - y);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            BigInt d = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split_cofactor(const BigInt& n, std::map<BigInt, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        BigInt d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            split_cofactor(d, out);
            split_cofactor(n / d, out);
            return;
        }
    }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n) {
    if (n == 0) throw std::domain_error("cannot factor zero");
    BigInt m = abs(n);
    std::map<BigInt, int> found;
    for (unsigned long p = 2; p <= 1000000 && m > 1; p += (p == 2 ? 1 : 2)) {
        if (BigInt(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            found[BigInt(p)] += 1;
        }
    }
    split_cofactor(m, found);
    return {found.begin(), found.end()};
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
    std::vector<BigInt> out;
    for (auto& [p, e] : factor_integer(n)) out.push_back(p);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t out = n;
    for (auto [p, e] : factor_u64(n)) out = out / p * (p - 1);
    return out;
}

}  // namespace galimage
