#pragma once

#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galimage/bigint.hpp"

namespace galimage {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, int degree) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = v;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const T& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    /// Coefficient of x^i; zero beyond the degree.
    T operator[](int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : T(0); }
    const std::vector<T>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    void set(int i, const T& v) {
        if (i > degree()) c_.resize(static_cast<std::size_t>(i) + 1, T(0));
        c_[static_cast<std::size_t>(i)] = v;
        trim();
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    template <class U>
    U eval(const U& x) const {
        U acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    Poly derivative() const {
        std::vector<T> out;
        for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * T(static_cast<long>(i)));
        return Poly(std::move(out));
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const T& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            const T mag = v < 0 ? T(-v) : T(v);
            std::string coef = to_string(mag);
            bool neg = v < 0;
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            bool unit = (mag == 1);
            if (i == 0) out += coef;
            else {
                if (!unit) out += coef + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using ZPoly = Poly<BigInt>;
using QPoly = Poly<BigRat>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
    return os << p.str();
}

QPoly to_qpoly(const ZPoly& p);
/// Throws unless every coefficient is an integer.
ZPoly to_zpoly(const QPoly& p);

/// Quotient and remainder over Q (divisor non-zero).
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly make_monic(const QPoly& a);
/// Monic gcd over Q; gcd(0, 0) = 0.
QPoly gcd(QPoly a, QPoly b);
/// Extended gcd over Q: returns (g, s, t) with s*a + t*b = g monic.
struct QXgcd {
    QPoly g, s, t;
};
QXgcd xgcd(const QPoly& a, const QPoly& b);

BigInt content(const ZPoly& p);
/// p divided by its content, sign chosen so the leading coefficient is positive.
ZPoly primitive_part(const ZPoly& p);
/// Primitive integer polynomial with the same roots as a rational polynomial.
ZPoly primitive_part(const QPoly& p);

/// Exact division in Z[x]; returns false when b does not divide a.
bool exact_divide(const ZPoly& a, const ZPoly& b, ZPoly* quotient);

/// Resultant over Q, Res(a, b) = lc(a)^deg(b) * prod_{a(x)=0} b(x).
BigRat resultant(const QPoly& a, const QPoly& b);
BigInt resultant(const ZPoly& a, const ZPoly& b);
/// disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p).
BigInt poly_discriminant(const ZPoly& p);

/// Newton interpolation through (xs[i], ys[i]) with distinct xs.
QPoly interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys);

/// p(x + shift).
QPoly taylor_shift(const QPoly& p, const BigRat& shift);

}  // namespace galimage
