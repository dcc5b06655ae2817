#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "galimage/bigint.hpp"
#include "galimage/characters.hpp"

namespace galimage {

/// a + bi in Z[i].
struct GaussInt {
    BigInt re{0}, im{0};

    GaussInt() = default;
    GaussInt(BigInt r, BigInt i = BigInt(0)) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r) : re(r), im(0) {}

    static GaussInt i() { return {BigInt(0), BigInt(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt conj() const { return {re, BigInt(-im)}; }
    BigInt norm() const { return re * re + im * im; }
    /// Exact division by 2; throws std::domain_error("non-integral coefficient").
    GaussInt half() const;
    std::string str() const;

    GaussInt& operator+=(const GaussInt& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussInt& operator-=(const GaussInt& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator-(const GaussInt& a) { return {BigInt(-a.re), BigInt(-a.im)}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {BigInt(a.re * b.re - a.im * b.im), BigInt(a.re * b.im + a.im * b.re)};
    }
    friend GaussInt operator*(const GaussInt& a, const BigInt& c) { return {BigInt(a.re * c), BigInt(a.im * c)}; }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
};

inline GaussInt scale(const GaussInt& a, const BigInt& c) { return a * c; }

/// Truncated power series sum_{n<=B} c_n q^n over Z[i].
class QSeries {
   public:
    explicit QSeries(int precision) : c_(static_cast<std::size_t>(precision) + 1) {}
    QSeries(std::vector<GaussInt> coeffs) : c_(std::move(coeffs)) {}

    int precision() const { return static_cast<int>(c_.size()) - 1; }
    const GaussInt& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
    GaussInt& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
    const std::vector<GaussInt>& coeffs() const { return c_; }

    QSeries truncate(int b) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    /// Schoolbook product; precision is min of the two.
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const GaussInt& s, const QSeries& a);

   private:
    std::vector<GaussInt> c_;
};

/// q * prod_{n>=1} (1-q^{3n})^2 (1-q^{9n})^2 through q^B.
QSeries eta_product_g(int b);

/// sum_{x,y} q^{3^j (x^2+xy+y^2)} through q^B, j in {0,1,2}.
QSeries theta_j(int j, int b);

/// Coefficients a_0..a_B (a_0 = 0) of the weight-3 newform of level 27,
/// f = (i/2) g theta_0 - ((1+i)/2) g theta_1 + (3/2) g theta_2.
std::vector<GaussInt> build_level27_newform(int b);

struct HeckeReport {
    bool pass = true;
    std::string violation;  // first failure, empty on pass
    std::size_t checks = 0;
};

/// Multiplicativity a_mn = a_m a_n (gcd(m,n)=1) and the prime-power recurrence
///   a_{p^{r+1}} = a_p a_{p^r} - eps(p) p^{k-1} a_{p^{r-1}}    (p not dividing N)
///   a_{p^{r+1}} = a_p a_{p^r}                                  (p | N)
/// on a[1..B]. T needs *, -, == and scale(T, BigInt).
template <class T>
HeckeReport hecke_validate(const std::vector<T>& a, int k, std::int64_t nebentypus_disc, std::uint64_t level) {
    HeckeReport rep;
    const std::uint64_t b = a.size() - 1;
    auto fail = [&](const std::string& msg) {
        rep.pass = false;
        rep.violation = msg;
    };
    for (std::uint64_t m = 2; m <= b && rep.pass; ++m) {
        for (std::uint64_t n = m + 1; m * n <= b; ++n) {
            if (gcd_u64(m, n) != 1) continue;
            ++rep.checks;
            if (!(a[m * n] == a[m] * a[n])) {
                fail("a_" + std::to_string(m * n) + " != a_" + std::to_string(m) + " * a_" + std::to_string(n));
                break;
            }
        }
    }
    for (std::uint64_t p : primes_up_to(b)) {
        if (!rep.pass) break;
        const bool bad = level % p == 0;
        const BigInt c = bad ? BigInt(0)
                             : BigInt(kronecker(nebentypus_disc, static_cast<std::int64_t>(p))) *
                                   pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(k - 1));
        std::uint64_t prev = 1, cur = p;
        while (cur <= b / p) {
            const std::uint64_t next = cur * p;
            ++rep.checks;
            T expect = a[p] * a[cur];
            if (c != 0) expect = expect - scale(a[prev], c);
            if (!(a[next] == expect)) {
                fail("recurrence fails at a_" + std::to_string(next));
                break;
            }
            prev = cur;
            cur = next;
        }
    }
    return rep;
}

}  // namespace galimage
