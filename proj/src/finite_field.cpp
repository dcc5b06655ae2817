#include "galimage/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace galimage {

FiniteField::FiniteField(FpPoly modulus) : ell_(modulus.modulus()), modulus_(std::move(modulus)) {
    q_ = pow(BigInt(static_cast<unsigned long>(ell_)), static_cast<unsigned long>(modulus_.degree()));
}

std::shared_ptr<const FiniteField> FiniteField::create(const FpPoly& modulus) {
    if (modulus.degree() < 1 || modulus.lead() != 1) throw std::invalid_argument("field modulus must be monic");
    if (!is_irreducible(modulus)) throw std::invalid_argument("field modulus must be irreducible");
    return std::shared_ptr<const FiniteField>(new FiniteField(modulus));
}

std::shared_ptr<const FiniteField> FiniteField::prime_field(std::uint64_t ell) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("characteristic must be prime");
    return std::shared_ptr<const FiniteField>(new FiniteField(FpPoly::x(ell)));
}

std::shared_ptr<const FiniteField> FiniteField::of_degree(std::uint64_t ell, int d) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{ell, d}];
    if (!slot) slot = d == 1 ? prime_field(ell) : create(find_irreducible(ell, d));
    return slot;
}

FFElem FiniteField::zero() const { return FFElem(shared_from_this(), FpPoly(ell_)); }
FFElem FiniteField::one() const { return FFElem(shared_from_this(), FpPoly::constant(ell_, 1)); }
FFElem FiniteField::gen() const { return FFElem(shared_from_this(), FpPoly::x(ell_)); }
FFElem FiniteField::from_int(const BigInt& v) const {
    return FFElem(shared_from_this(), FpPoly::constant(ell_, mod_u64(v, ell_)));
}
FFElem FiniteField::from_int(long v) const { return from_int(BigInt(v)); }
FFElem FiniteField::from_poly(const FpPoly& p) const { return FFElem(shared_from_this(), p); }

FFElem FiniteField::from_index(std::uint64_t i) const {
    std::vector<std::uint64_t> c;
    for (int k = 0; k < degree(); ++k) {
        c.push_back(i % ell_);
        i /= ell_;
    }
    return FFElem(shared_from_this(), FpPoly(ell_, c));
}

FFElem FiniteField::primitive_element() const {
    const BigInt qm1 = q_ - 1;
    auto primes = prime_divisors(qm1 == 0 ? BigInt(1) : qm1);
    std::mt19937_64 rng(ell_ * 1315423911ull + static_cast<std::uint64_t>(degree()));
    for (std::uint64_t i = 1;; ++i) {
        // Small fields: walk indices in order; large fields: sample deterministically.
        FFElem g = from_index(i);
        if (q_ >= 1000000) {
            std::vector<std::uint64_t> c(static_cast<std::size_t>(degree()));
            for (auto& v : c) v = rng() % ell_;
            g = from_poly(FpPoly(ell_, c));
        }
        if (g.is_zero()) continue;
        bool ok = true;
        for (const auto& r : primes)
            if (g.pow(qm1 / r).is_one()) {
                ok = false;
                break;
            }
        if (ok) return g;
        if (q_ < 1000000 && BigInt(static_cast<unsigned long>(i)) >= q_) throw std::logic_error("no primitive element");
    }
}

std::string FiniteField::describe() const {
    if (degree() == 1) return "F_" + std::to_string(ell_);
    return "F_" + std::to_string(ell_) + "^" + std::to_string(degree());
}

FFElem::FFElem(FiniteFieldPtr f, FpPoly residue) : f_(std::move(f)), r_(std::move(residue)) {
    if (r_.degree() >= f_->degree()) r_ = r_ % f_->modulus();
}

std::uint64_t FFElem::prime_field_value() const {
    if (!in_prime_field()) throw std::domain_error("element not in the prime field");
    return r_[0];
}

FFElem& FFElem::operator+=(const FFElem& o) {
    r_ += o.r_;
    return *this;
}
FFElem& FFElem::operator-=(const FFElem& o) {
    r_ -= o.r_;
    return *this;
}
FFElem& FFElem::operator*=(const FFElem& o) {
    r_ = (r_ * o.r_) % f_->modulus();
    return *this;
}
FFElem operator-(const FFElem& a) { return FFElem(a.f_, FpPoly(a.f_->characteristic()) - a.r_); }

FFElem FFElem::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in finite field");
    FpXgcd x = xgcd(r_, f_->modulus());
    return FFElem(f_, x.s);
}

FFElem FFElem::pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(BigInt(-e));
    return FFElem(f_, powmod(r_, e, f_->modulus()));
}

std::uint64_t FFElem::index() const {
    std::uint64_t out = 0;
    for (int k = f_->degree() - 1; k >= 0; --k) out = out * f_->characteristic() + r_[k];
    return out;
}

std::string FFElem::str() const {
    if (in_prime_field()) return std::to_string(r_[0]);
    return r_.lift().str("a");
}

bool is_square_ff(const FFElem& x) {
    if (x.is_zero() || x.field()->characteristic() == 2) return true;
    return x.pow((x.field()->order() - 1) / 2).is_one();
}

int element_degree(const FFElem& x) {
    const int f = x.field()->degree();
    for (int d = 1; d <= f; ++d) {
        if (f % d) continue;
        FFElem y = x;
        for (int i = 0; i < d; ++i) y = y.frobenius();
        if (y == x) return d;
    }
    return f;
}

BigInt multiplicative_order(const FFElem& x) {
    if (x.is_zero()) throw std::domain_error("order of zero");
    BigInt ord = x.field()->order() - 1;
    for (const auto& [r, e] : factor_integer(ord)) {
        for (int i = 0; i < e; ++i) {
            if (!x.pow(ord / r).is_one()) break;
            ord /= r;
        }
    }
    return ord;
}

FFPoly::FFPoly(FiniteFieldPtr f, std::vector<FFElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

FFPoly FFPoly::from_fp(FiniteFieldPtr f, const FpPoly& p) {
    std::vector<FFElem> c;
    for (auto v : p.coeffs()) c.push_back(f->from_int(BigInt(static_cast<unsigned long>(v))));
    return FFPoly(std::move(f), std::move(c));
}

void FFPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FFElem FFPoly::coeff(int i) const {
    if (i >= 0 && i <= degree()) return c_[static_cast<std::size_t>(i)];
    return f_->zero();
}

FFPoly operator+(const FFPoly& a, const FFPoly& b) {
    std::vector<FFElem> c;
    for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) c.push_back(a.coeff(i) + b.coeff(i));
    return FFPoly(a.f_, std::move(c));
}

FFPoly operator-(const FFPoly& a, const FFPoly& b) {
    std::vector<FFElem> c;
    for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) c.push_back(a.coeff(i) - b.coeff(i));
    return FFPoly(a.f_, std::move(c));
}

FFPoly operator*(const FFPoly& a, const FFPoly& b) {
    if (a.is_zero() || b.is_zero()) return FFPoly(a.f_, {});
    std::vector<FFElem> c(a.c_.size() + b.c_.size() - 1, a.f_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return FFPoly(a.f_, std::move(c));
}

FFElem FFPoly::eval(const FFElem& x) const {
    FFElem acc = f_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

FFPoly FFPoly::monic() const {
    if (is_zero()) return *this;
    FFElem inv = lead().inverse();
    std::vector<FFElem> c;
    for (const auto& v : c_) c.push_back(v * inv);
    return FFPoly(f_, std::move(c));
}

std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& f = b.field();
    if (a.degree() < b.degree()) return {FFPoly(f, {}), a};
    std::vector<FFElem> r = a.coeffs();
    std::vector<FFElem> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), f->zero());
    const FFElem inv = b.lead().inverse();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        FFElem c = r[static_cast<std::size_t>(i)] * inv;
        q[static_cast<std::size_t>(i - db)] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {FFPoly(f, std::move(q)), FFPoly(f, std::move(r))};
}

FFPoly gcd(FFPoly a, FFPoly b) {
    while (!b.is_zero()) {
        FFPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FFPoly powmod(const FFPoly& base, const BigInt& e, const FFPoly& m) {
    const auto& f = m.field();
    FFPoly result = divmod(FFPoly(f, {f->one()}), m).second;
    FFPoly b = divmod(base, m).second;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = divmod(result * result, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, m).second;
    }
    return result;
}

namespace {

void split_roots(const FFPoly& g, std::mt19937_64& rng, std::vector<FFElem>& out) {
    const auto& f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        FFPoly m = g.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    const std::uint64_t ell = f->characteristic();
    std::uniform_int_distribution<std::uint64_t> dist(0, ell - 1);
    while (true) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(f->degree()));
        for (auto& v : c) v = dist(rng);
        FFElem a = f->from_poly(FpPoly(ell, c));
        FFPoly h;
        if (ell == 2) {
            FFPoly ax(f, {f->zero(), a});
            FFPoly t = divmod(ax, g).second;
            h = t;
            const int n = f->degree();
            for (int i = 1; i < n; ++i) {
                t = divmod(t * t, g).second;
                h = h + t;
            }
        } else {
            FFPoly lin(f, {a, f->one()});
            h = powmod(lin, (f->order() - 1) / 2, g) - FFPoly(f, {f->one()});
        }
        FFPoly d = gcd(h, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_roots(d, rng, out);
            split_roots(divmod(g, d).first, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FFElem> roots(const FFPoly& p, std::uint64_t seed) {
    if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
    const auto& f = p.field();
    std::vector<FFElem> out;
    if (p.degree() < 1) return out;
    FFPoly x(f, {f->zero(), f->one()});
    FFPoly xq = powmod(x, f->order(), p.monic());
    FFPoly g = gcd(p, xq - x);
    std::mt19937_64 rng(seed ^ (f->characteristic() * 0x9e3779b97f4a7c15ull) ^ static_cast<std::uint64_t>(p.degree()));
    split_roots(g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

FFElem FieldEmbedding::operator()(const FFElem& x) const {
    if (x.field() != source && x.field()->modulus() != source->modulus())
        throw std::invalid_argument("embedding applied to an element of another field");
    FFElem acc = target->zero();
    const auto& r = x.residue();
    for (int i = r.degree(); i >= 0; --i) acc = acc * image_of_gen + target->from_int(BigInt(static_cast<unsigned long>(r[i])));
    return acc;
}

FieldEmbedding embed(const FiniteFieldPtr& src, const FiniteFieldPtr& dst) {
    if (src->characteristic() != dst->characteristic() || dst->degree() % src->degree() != 0)
        throw std::invalid_argument("no embedding " + src->describe() + " -> " + dst->describe());
    auto rs = roots(FFPoly::from_fp(dst, src->modulus()));
    if (rs.empty()) throw std::logic_error("embedding: modulus has no root in the target");
    return {src, dst, rs.front()};
}

}  // namespace galimage
