#include "galimage/number_field.hpp"

#include <stdexcept>

#include "galimage/linalg.hpp"
#include "galimage/zfactor.hpp"

namespace galimage {

NumberField::NumberField(ZPoly f, std::string name) : f_(std::move(f)), fq_(to_qpoly(f_)), name_(std::move(name)) {
    disc_ = galimage::poly_discriminant(f_);
}

std::shared_ptr<const NumberField> NumberField::create(const ZPoly& f, std::string name) {
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("defining polynomial must be monic of degree >= 1");
    if (!is_irreducible_over_q(f)) throw std::invalid_argument("defining polynomial " + f.str() + " is reducible");
    return std::shared_ptr<const NumberField>(new NumberField(f, std::move(name)));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
    static const auto q = std::shared_ptr<const NumberField>(new NumberField(ZPoly{BigInt(0), BigInt(1)}, "Q"));
    return q;
}

NFElement NumberField::gen() const { return NFElement(shared_from_this(), QPoly::x()); }
NFElement NumberField::from_rational(const BigRat& v) const { return NFElement(shared_from_this(), QPoly::constant(v)); }
NFElement NumberField::from_coords(const QPoly& coords) const { return NFElement(shared_from_this(), coords); }
NFElement NumberField::from_coords(const std::vector<BigRat>& coords) const {
    return NFElement(shared_from_this(), QPoly(coords));
}

NFElement::NFElement(NumberFieldPtr field, QPoly coords) : k_(std::move(field)), c_(std::move(coords)) {
    if (!k_) throw std::invalid_argument("element without a parent field");
    if (c_.degree() >= k_->degree()) c_ = c_ % k_->qpoly();
}

std::vector<BigRat> NFElement::coords() const {
    std::vector<BigRat> out(static_cast<std::size_t>(k_->degree()), BigRat(0));
    for (int i = 0; i <= c_.degree(); ++i) out[static_cast<std::size_t>(i)] = c_[i];
    return out;
}

BigRat NFElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("element is not rational");
    return c_[0];
}

namespace {
void same_field(const NFElement& a, const NFElement& b) {
    if (a.field() != b.field() && a.field()->poly() != b.field()->poly())
        throw std::invalid_argument("elements of different number fields");
}
}  // namespace

NFElement& NFElement::operator+=(const NFElement& o) {
    same_field(*this, o);
    c_ += o.c_;
    return *this;
}
NFElement& NFElement::operator-=(const NFElement& o) {
    same_field(*this, o);
    c_ -= o.c_;
    return *this;
}
NFElement& NFElement::operator*=(const NFElement& o) {
    same_field(*this, o);
    c_ = (c_ * o.c_) % k_->qpoly();
    return *this;
}
NFElement& NFElement::operator*=(const BigRat& s) {
    c_ *= s;
    return *this;
}
NFElement operator-(const NFElement& a) { return NFElement(a.k_, -a.c_); }
bool operator==(const NFElement& a, const NFElement& b) { return a.c_ == b.c_; }

NFElement NFElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in number field");
    QXgcd x = xgcd(c_, k_->qpoly());
    return NFElement(k_, x.s);
}

NFElement NFElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElement result = k_->from_rational(1), b = *this;
    while (e) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

BigRat nf_norm(const NFElement& x) {
    if (x.is_zero()) return 0;
    return resultant(x.field()->qpoly(), x.poly());
}

BigRat nf_trace(const NFElement& x) {
    QPoly c = charpoly(x);
    return -c[c.degree() - 1];
}

QPoly minpoly_over_Q(const NFElement& x) {
    const int d = x.field()->degree();
    std::vector<std::vector<BigRat>> powers;
    NFElement p = x.field()->from_rational(1);
    for (int m = 0; m <= d; ++m) {
        powers.push_back(p.coords());
        if (m >= 1) {
            // Is x^m a combination of 1, x, ..., x^(m-1)?
            QMatrix a(static_cast<std::size_t>(d), QVector(static_cast<std::size_t>(m)));
            QVector b(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                b[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
            }
            if (auto sol = solve(a, b, static_cast<std::size_t>(m))) {
                std::vector<BigRat> c(static_cast<std::size_t>(m) + 1);
                for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] = -(*sol)[static_cast<std::size_t>(j)];
                c[static_cast<std::size_t>(m)] = 1;
                return QPoly(std::move(c));
            }
        }
        p *= x;
    }
    throw std::logic_error("minpoly_over_Q: no dependence found");
}

QPoly charpoly(const NFElement& x) {
    QPoly m = minpoly_over_Q(x);
    QPoly out = QPoly::constant(1);
    for (int i = 0; i < x.field()->degree() / m.degree(); ++i) out *= m;
    return out;
}

bool is_integral(const NFElement& x) {
    const QPoly m = minpoly_over_Q(x);
    for (const auto& c : m.coeffs())
        if (c.get_den() != 1) return false;
    return true;
}

NFElement eval(const QPoly& p, const NFElement& x) {
    NFElement acc = x.field()->from_rational(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + x.field()->from_rational(p[i]);
    return acc;
}

std::optional<QPoly> express_in(const NFElement& alpha, const NFElement& beta) {
    const int n = alpha.field()->degree();
    const int d = minpoly_over_Q(beta).degree();
    QMatrix a(static_cast<std::size_t>(n), QVector(static_cast<std::size_t>(d)));
    NFElement p = beta.field()->from_rational(1);
    for (int j = 0; j < d; ++j) {
        auto c = p.coords();
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)];
        p *= beta;
    }
    auto sol = solve(a, alpha.coords(), static_cast<std::size_t>(d));
    if (!sol) return std::nullopt;
    return QPoly(*sol);
}

NFPoly::NFPoly(NumberFieldPtr k, std::vector<NFElement> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) { trim(); }

NFPoly NFPoly::from_qpoly(NumberFieldPtr k, const QPoly& p) {
    std::vector<NFElement> c;
    for (const auto& v : p.coeffs()) c.push_back(k->from_rational(v));
    return NFPoly(std::move(k), std::move(c));
}

void NFPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

NFElement NFPoly::coeff(int i) const {
    if (i >= 0 && i <= degree()) return c_[static_cast<std::size_t>(i)];
    return k_->from_rational(0);
}

NFPoly operator+(const NFPoly& a, const NFPoly& b) {
    std::vector<NFElement> c;
    for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) c.push_back(a.coeff(i) + b.coeff(i));
    return NFPoly(a.k_, std::move(c));
}

NFPoly operator-(const NFPoly& a, const NFPoly& b) {
    std::vector<NFElement> c;
    for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) c.push_back(a.coeff(i) - b.coeff(i));
    return NFPoly(a.k_, std::move(c));
}

NFPoly operator*(const NFPoly& a, const NFPoly& b) {
    if (a.is_zero() || b.is_zero()) return NFPoly(a.k_, {});
    std::vector<NFElement> c(a.c_.size() + b.c_.size() - 1, a.k_->from_rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return NFPoly(a.k_, std::move(c));
}

bool operator==(const NFPoly& a, const NFPoly& b) { return a.c_ == b.c_; }

NFElement NFPoly::eval(const NFElement& x) const {
    NFElement acc = k_->from_rational(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

NFPoly NFPoly::monic() const {
    if (is_zero()) return *this;
    NFElement inv = lead().inverse();
    std::vector<NFElement> c;
    for (const auto& v : c_) c.push_back(v * inv);
    return NFPoly(k_, std::move(c));
}

NFPoly NFPoly::shift(const NFElement& s) const {
    NFPoly lin(k_, {s, k_->from_rational(1)});
    NFPoly out(k_, {});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + NFPoly(k_, {*it});
    return out;
}

std::pair<NFPoly, NFPoly> divmod(const NFPoly& a, const NFPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& k = a.field() ? a.field() : b.field();
    if (a.degree() < b.degree()) return {NFPoly(k, {}), a};
    std::vector<NFElement> r = a.coeffs();
    std::vector<NFElement> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), k->from_rational(0));
    const NFElement inv = b.lead().inverse();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        NFElement f = r[static_cast<std::size_t>(i)] * inv;
        q[static_cast<std::size_t>(i - db)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {NFPoly(k, std::move(q)), NFPoly(k, std::move(r))};
}

NFPoly gcd(NFPoly a, NFPoly b) {
    while (!b.is_zero()) {
        NFPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly norm_poly(const NFPoly& h) {
    const auto& k = h.field();
    const int n = h.degree() * k->degree();
    std::vector<BigRat> xs, ys;
    for (int i = 0; i <= n; ++i) {
        BigRat x0(i);
        xs.push_back(x0);
        ys.push_back(nf_norm(h.eval(k->from_rational(x0))));
    }
    return interpolate(xs, ys);
}

std::vector<NFPoly> factor_squarefree_over_field(const NFPoly& h0) {
    const auto& k = h0.field();
    NFPoly h = h0.monic();
    if (h.degree() <= 1) return {h};
    if (k->degree() == 1) {
        std::vector<NFPoly> out;
        std::vector<BigRat> c;
        for (const auto& v : h.coeffs()) c.push_back(v.rational_value());
        for (auto& [g, m] : factor_over_q(QPoly(c))) out.push_back(NFPoly::from_qpoly(k, to_qpoly(g)).monic());
        return out;
    }
    const NFElement theta = k->gen();
    for (long t : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, -7L}) {
        // h_t(x) = h(x - t*theta); its norm is squarefree for all but finitely many t.
        NFElement s = theta * BigRat(t);
        NFPoly ht = h.shift(-s);
        QPoly n = norm_poly(ht);
        if (gcd(n, n.derivative()).degree() > 0) continue;
        std::vector<NFPoly> out;
        for (auto& [g, m] : factor_over_q(n)) {
            NFPoly gk = NFPoly::from_qpoly(k, to_qpoly(g));
            NFPoly d = gcd(ht, gk);
            if (d.degree() > 0) out.push_back(d.shift(s).monic());
        }
        return out;
    }
    throw std::logic_error("Trager factorisation: no suitable shift");
}

std::vector<NFElement> roots_in_field(const NFPoly& h) {
    if (h.is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<NFElement> out;
    if (h.degree() < 1) return out;
    NFPoly dh(h.field(), {});
    {
        std::vector<NFElement> c;
        for (int i = 1; i <= h.degree(); ++i) c.push_back(h.coeff(i) * BigRat(i));
        dh = NFPoly(h.field(), std::move(c));
    }
    NFPoly sq = divmod(h, gcd(h, dh)).first;
    for (auto& f : factor_squarefree_over_field(sq))
        if (f.degree() == 1) out.push_back(-f.coeff(0));
    return out;
}

std::optional<NFElement> sqrt_in_field(const NFElement& x) {
    if (x.is_zero()) return x;
    const auto& k = x.field();
    if (x.is_rational()) {
        BigRat v = x.rational_value();
        if (v > 0) {
            BigInt a = v.get_num(), b = v.get_den();
            if (mpz_perfect_square_p(a.get_mpz_t()) && mpz_perfect_square_p(b.get_mpz_t())) {
                BigInt ra, rb;
                mpz_sqrt(ra.get_mpz_t(), a.get_mpz_t());
                mpz_sqrt(rb.get_mpz_t(), b.get_mpz_t());
                return k->from_rational(BigRat(ra, rb));
            }
        }
        if (k->degree() == 1) return std::nullopt;
    }
    NFPoly h(k, {-x, k->from_rational(0), k->from_rational(1)});
    auto roots = roots_in_field(h);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

}  // namespace galimage
