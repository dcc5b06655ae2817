#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "galimage/bigint.hpp"
#include "galimage/poly.hpp"

namespace galimage {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse modulo a prime p; a must be non-zero mod p.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

/// Polynomial over F_p (p prime, p < 2^63), ascending coefficients in [0, p).
class FpPoly {
   public:
    FpPoly() = default;
    explicit FpPoly(std::uint64_t p) : p_(p) {}
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    static FpPoly from_zpoly(const ZPoly& f, std::uint64_t p);
    /// Throws when a denominator is divisible by p.
    static FpPoly from_qpoly(const QPoly& f, std::uint64_t p);
    static FpPoly constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v % p}); }
    static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
    std::uint64_t operator[](int i) const {
        return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : 0;
    }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    FpPoly& operator+=(const FpPoly& o);
    FpPoly& operator-=(const FpPoly& o);
    FpPoly scaled(std::uint64_t s) const;
    friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
    friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
    friend bool operator<(const FpPoly& a, const FpPoly& b);

    std::uint64_t eval(std::uint64_t x) const;
    FpPoly derivative() const;
    FpPoly monic() const;

    /// Lifts to Z[x] with coefficients in [0, p) (symmetric == false) or (-p/2, p/2].
    ZPoly lift(bool symmetric = false) const;

   private:
    void trim();
    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
/// Monic gcd.
FpPoly gcd(FpPoly a, FpPoly b);
/// Returns monic g = s*a + t*b.
struct FpXgcd {
    FpPoly g, s, t;
};
FpXgcd xgcd(const FpPoly& a, const FpPoly& b);
/// base^e mod m.
FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& m);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m);

struct FpFactor {
    FpPoly factor;  // monic irreducible
    int multiplicity;
};

/// Squarefree factorisation of a monic polynomial: pairs (squarefree part, multiplicity).
std::vector<FpFactor> squarefree_factor(const FpPoly& f);
/// Distinct-degree factorisation of a monic squarefree polynomial: pairs (product, degree).
std::vector<std::pair<FpPoly, int>> distinct_degree_factor(const FpPoly& f);
/// Splits a monic squarefree product of irreducibles of degree d into its factors.
std::vector<FpPoly> equal_degree_factor(const FpPoly& f, int d, std::mt19937_64& rng);

/// Complete factorisation into monic irreducibles with multiplicities, sorted by (degree, coefficients).
/// Randomness is seeded from the input and the seed, so results are reproducible.
std::vector<FpFactor> factor(const FpPoly& f, std::uint64_t seed = 0);

/// factor_mod_ell: factorisation of an integer polynomial modulo a prime.
/// Throws std::domain_error when ell divides the leading coefficient.
std::vector<FpFactor> factor_mod_ell(const ZPoly& f, std::uint64_t ell, std::uint64_t seed = 0);

bool is_irreducible(const FpPoly& f);

/// Smallest (in lexicographic order from the top) monic irreducible polynomial of degree d over F_p.
FpPoly find_irreducible(std::uint64_t p, int d);

}  // namespace galimage
