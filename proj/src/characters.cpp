#include "galimage/characters.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace galimage {

int kronecker(std::int64_t a, std::int64_t n) {
    if (a == 0 && n == 0) throw std::domain_error("kronecker(0, 0) is undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        // (a/2) = 1 if a = +-1 mod 8, -1 if a = +-3 mod 8.
        std::int64_t r = ((a % 8) + 8) % 8;
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    // Jacobi symbol (a/n), n odd positive.
    std::int64_t x = ((a % n) + n) % n;
    std::int64_t y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            std::int64_t r = y % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

namespace {

std::uint64_t primitive_root_mod_prime_power(std::uint64_t p, int e) {
    const std::uint64_t pm1 = p - 1;
    auto fac = factor_u64(pm1);
    for (std::uint64_t g = 2;; ++g) {
        bool ok = true;
        for (auto [q, k] : fac)
            if (powmod_u64(g, pm1 / q, p) == 1) {
                ok = false;
                break;
            }
        if (!ok) continue;
        if (e >= 2 && powmod_u64(g, pm1, p * p) == 1) continue;
        return g;
    }
}

// x = r mod pe, x = 1 mod m/pe.
std::uint64_t crt_lift(std::uint64_t r, std::uint64_t pe, std::uint64_t m) {
    const std::uint64_t rest = m / pe;
    if (rest == 1) return r % m;
    // x = 1 + rest * t, with 1 + rest*t = r mod pe.
    std::uint64_t inv = 0;
    {
        std::int64_t a = static_cast<std::int64_t>(rest % pe), b = static_cast<std::int64_t>(pe), x0 = 1, x1 = 0;
        while (b) {
            std::int64_t q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        }
        inv = static_cast<std::uint64_t>(((x0 % static_cast<std::int64_t>(pe)) + static_cast<std::int64_t>(pe)) % static_cast<std::int64_t>(pe));
    }
    std::uint64_t t = mulmod_u64((r + pe - 1) % pe, inv, pe);
    return (1 + mulmod_u64(rest, t, m)) % m;
}

}  // namespace

UnitGroupStructure::UnitGroupStructure(std::uint64_t m) : m_(m) {
    if (m == 0) throw std::invalid_argument("modulus must be positive");
    for (auto [p, e] : factor_u64(m)) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        Component c;
        c.pe = pe;
        std::vector<std::uint64_t> local_gens, local_orders;
        if (p == 2) {
            if (e == 2) {
                local_gens = {3};
                local_orders = {2};
            } else if (e >= 3) {
                local_gens = {pe - 1, 5};
                local_orders = {2, pe / 4};
            }
        } else {
            local_gens = {primitive_root_mod_prime_power(p, e)};
            local_orders = {pe / p * (p - 1)};
        }
        c.log.assign(pe, {});
        // Enumerate all products of local generators.
        std::vector<std::uint64_t> exps(local_gens.size(), 0);
        std::uint64_t total = 1;
        for (auto o : local_orders) total *= o;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx, val = 1 % pe;
            for (std::size_t i = 0; i < local_gens.size(); ++i) {
                exps[i] = t % local_orders[i];
                t /= local_orders[i];
                val = mulmod_u64(val, powmod_u64(local_gens[i], exps[i], pe), pe);
            }
            c.log[val] = exps;
        }
        for (std::size_t i = 0; i < local_gens.size(); ++i) {
            c.gen_slots.push_back(gens_.size());
            gens_.push_back(crt_lift(local_gens[i], pe, m));
            orders_.push_back(local_orders[i]);
        }
        comps_.push_back(std::move(c));
    }
}

std::uint64_t UnitGroupStructure::group_order() const {
    std::uint64_t out = 1;
    for (auto o : orders_) out *= o;
    return out;
}

std::vector<std::uint64_t> UnitGroupStructure::exponents(std::int64_t a) const {
    const std::int64_t mm = static_cast<std::int64_t>(m_);
    std::uint64_t r = static_cast<std::uint64_t>(((a % mm) + mm) % mm);
    if (gcd_u64(r, m_) != 1) throw std::domain_error("non-unit argument");
    std::vector<std::uint64_t> out(gens_.size(), 0);
    for (const auto& c : comps_) {
        const auto& ex = c.log[r % c.pe];
        for (std::size_t i = 0; i < c.gen_slots.size(); ++i) out[c.gen_slots[i]] = ex[i];
    }
    return out;
}

UnitGroupPtr unit_group(std::uint64_t m) {
    static std::mutex mu;
    static std::map<std::uint64_t, UnitGroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[m];
    if (!slot) slot = std::make_shared<const UnitGroupStructure>(m);
    return slot;
}

QuadChar::QuadChar(UnitGroupPtr g, std::vector<int> signs) : g_(std::move(g)), signs_(std::move(signs)) {
    if (signs_.size() != g_->generators().size()) throw std::invalid_argument("one sign per generator expected");
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (signs_[i] != 1 && signs_[i] != -1) throw std::invalid_argument("signs must be +-1");
        if (signs_[i] == -1 && g_->orders()[i] % 2) throw std::invalid_argument("odd-order generator cannot map to -1");
    }
}

QuadChar QuadChar::from_kronecker(std::int64_t d, std::uint64_t m) {
    auto g = unit_group(m);
    std::vector<int> s;
    for (auto x : g->generators()) {
        int v = kronecker(d, static_cast<std::int64_t>(x));
        if (v == 0) throw std::invalid_argument("discriminant not coprime to a unit generator");
        s.push_back(v);
    }
    QuadChar chi(g, s);
    // Check that (d/.) is really a character mod m.
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(m, 4000); ++a)
        if (gcd_u64(a, m) == 1 && chi.value(static_cast<std::int64_t>(a)) != kronecker(d, static_cast<std::int64_t>(a)))
            throw std::invalid_argument("(" + std::to_string(d) + "/.) is not defined modulo " + std::to_string(m));
    return chi;
}

bool QuadChar::is_trivial() const {
    for (int s : signs_)
        if (s != 1) return false;
    return true;
}

int QuadChar::value(std::int64_t a) const {
    const std::int64_t mm = static_cast<std::int64_t>(modulus());
    std::uint64_t r = static_cast<std::uint64_t>(((a % mm) + mm) % mm);
    if (gcd_u64(r, modulus()) != 1) return 0;
    auto e = g_->exponents(a);
    int v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (signs_[i] == -1 && (e[i] & 1)) v = -v;
    return v;
}

std::uint64_t QuadChar::conductor() const {
    const std::uint64_t m = modulus();
    for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        bool ok = true;
        for (std::uint64_t a = 1; a < m && ok; a += d)
            if (gcd_u64(a, m) == 1 && value(static_cast<std::int64_t>(a)) != 1) ok = false;
        if (ok) return d;
    }
    return m;
}

std::string QuadChar::describe() const {
    std::string s = "mod " + std::to_string(modulus()) + " [";
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g_->generators()[i]) + "->" + (signs_[i] > 0 ? "1" : "-1");
    }
    return s + "]";
}

FFChar::FFChar(UnitGroupPtr g, FiniteFieldPtr f, std::vector<FFElem> images)
    : g_(std::move(g)), f_(std::move(f)), images_(std::move(images)) {
    if (images_.size() != g_->generators().size()) throw std::invalid_argument("one image per generator expected");
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (!images_[i].pow(g_->orders()[i]).is_one()) throw std::invalid_argument("generator image has wrong order");
}

bool FFChar::is_trivial() const {
    for (const auto& v : images_)
        if (!v.is_one()) return false;
    return true;
}

FFElem FFChar::value(std::int64_t a) const {
    auto e = g_->exponents(a);
    FFElem v = f_->one();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) v *= images_[i].pow(e[i]);
    return v;
}

std::string FFChar::describe() const {
    std::string s = "mod " + std::to_string(modulus()) + " -> " + f_->describe() + " [";
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g_->generators()[i]) + "->" + images_[i].str();
    }
    return s + "]";
}

std::vector<QuadChar> enumerate_quadratic_chars(std::uint64_t m) {
    auto g = unit_group(m);
    std::vector<std::size_t> even;
    for (std::size_t i = 0; i < g->orders().size(); ++i)
        if (g->orders()[i] % 2 == 0) even.push_back(i);
    std::vector<QuadChar> out;
    for (std::uint64_t mask = 1; mask < (1ull << even.size()); ++mask) {
        std::vector<int> s(g->generators().size(), 1);
        for (std::size_t j = 0; j < even.size(); ++j)
            if (mask >> j & 1) s[even[j]] = -1;
        out.emplace_back(g, s);
    }
    return out;
}

std::vector<FFChar> enumerate_ff_chars(std::uint64_t n, const FiniteFieldPtr& f) {
    auto g = unit_group(n);
    const BigInt qm1 = f->order() - 1;
    const FFElem w = f->primitive_element();
    std::vector<std::vector<FFElem>> choices;
    for (auto d : g->orders()) {
        BigInt gg;
        BigInt dd(static_cast<unsigned long>(d));
        mpz_gcd(gg.get_mpz_t(), dd.get_mpz_t(), qm1.get_mpz_t());
        const FFElem zeta = w.pow(qm1 / gg);
        std::vector<FFElem> opts;
        FFElem cur = f->one();
        for (unsigned long k = 0; k < gg.get_ui(); ++k) {
            opts.push_back(cur);
            cur *= zeta;
        }
        choices.push_back(std::move(opts));
    }
    std::vector<FFChar> out;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        std::vector<FFElem> images;
        for (std::size_t i = 0; i < choices.size(); ++i) images.push_back(choices[i][idx[i]]);
        out.emplace_back(g, f, std::move(images));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

}  // namespace galimage
