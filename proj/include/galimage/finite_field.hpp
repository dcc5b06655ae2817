#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "galimage/fp_poly.hpp"

namespace galimage {

class FFElem;

/// F_{ell^f} = F_ell[x]/(modulus) for a monic irreducible modulus.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
   public:
    /// Throws std::invalid_argument unless modulus is monic irreducible.
    static std::shared_ptr<const FiniteField> create(const FpPoly& modulus);
    static std::shared_ptr<const FiniteField> prime_field(std::uint64_t ell);
    /// Extension of degree d built on find_irreducible(ell, d).
    static std::shared_ptr<const FiniteField> of_degree(std::uint64_t ell, int d);

    std::uint64_t characteristic() const { return ell_; }
    int degree() const { return modulus_.degree(); }
    const FpPoly& modulus() const { return modulus_; }
    const BigInt& order() const { return q_; }

    FFElem zero() const;
    FFElem one() const;
    /// Class of x.
    FFElem gen() const;
    FFElem from_int(const BigInt& v) const;
    FFElem from_int(long v) const;
    FFElem from_poly(const FpPoly& p) const;
    /// Element whose base-ell digits are the coordinates; 0 <= i < q.
    FFElem from_index(std::uint64_t i) const;

    /// Generator of the multiplicative group (smallest index).
    FFElem primitive_element() const;

    std::string describe() const;

   private:
    explicit FiniteField(FpPoly modulus);
    std::uint64_t ell_;
    FpPoly modulus_;
    BigInt q_;
};

using FiniteFieldPtr = std::shared_ptr<const FiniteField>;

class FFElem {
   public:
    FFElem() = default;
    FFElem(FiniteFieldPtr f, FpPoly residue);

    const FiniteFieldPtr& field() const { return f_; }
    const FpPoly& residue() const { return r_; }
    bool is_zero() const { return r_.is_zero(); }
    bool is_one() const { return r_.is_one(); }
    /// The value when the element lies in the prime field.
    bool in_prime_field() const { return r_.degree() <= 0; }
    std::uint64_t prime_field_value() const;

    FFElem& operator+=(const FFElem& o);
    FFElem& operator-=(const FFElem& o);
    FFElem& operator*=(const FFElem& o);
    friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
    friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
    friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
    friend FFElem operator-(const FFElem& a);
    friend FFElem operator/(const FFElem& a, const FFElem& b) { return a * b.inverse(); }
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.r_ == b.r_; }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }
    friend bool operator<(const FFElem& a, const FFElem& b) { return a.r_ < b.r_; }

    FFElem inverse() const;
    FFElem pow(const BigInt& e) const;
    FFElem pow(std::uint64_t e) const { return pow(BigInt(static_cast<unsigned long>(e))); }
    FFElem frobenius() const { return pow(f_->characteristic()); }

    /// Base-ell digits of the coordinates, inverse of FiniteField::from_index (small fields).
    std::uint64_t index() const;
    std::string str() const;

   private:
    FiniteFieldPtr f_;
    FpPoly r_;
};

/// True iff x is a square in its field; zero counts as a square, every element is a square in characteristic 2.
bool is_square_ff(const FFElem& x);

/// Degree over F_ell of the subfield generated by x.
int element_degree(const FFElem& x);

/// Multiplicative order of a non-zero element.
BigInt multiplicative_order(const FFElem& x);

/// Polynomial with coefficients in a finite field.
class FFPoly {
   public:
    FFPoly() = default;
    FFPoly(FiniteFieldPtr f, std::vector<FFElem> coeffs);
    /// Image of a prime-field polynomial.
    static FFPoly from_fp(FiniteFieldPtr f, const FpPoly& p);

    const FiniteFieldPtr& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FFElem>& coeffs() const { return c_; }
    FFElem coeff(int i) const;
    const FFElem& lead() const { return c_.back(); }

    friend FFPoly operator+(const FFPoly& a, const FFPoly& b);
    friend FFPoly operator-(const FFPoly& a, const FFPoly& b);
    friend FFPoly operator*(const FFPoly& a, const FFPoly& b);
    friend bool operator==(const FFPoly& a, const FFPoly& b) { return a.c_ == b.c_; }

    FFElem eval(const FFElem& x) const;
    FFPoly monic() const;

   private:
    void trim();
    FiniteFieldPtr f_;
    std::vector<FFElem> c_;
};

std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b);
FFPoly gcd(FFPoly a, FFPoly b);
FFPoly powmod(const FFPoly& base, const BigInt& e, const FFPoly& m);

/// All roots in the coefficient field, sorted, without multiplicity.
std::vector<FFElem> roots(const FFPoly& p, std::uint64_t seed = 0);

/// Ring embedding of a finite field into a larger one of the same characteristic.
struct FieldEmbedding {
    FiniteFieldPtr source;
    FiniteFieldPtr target;
    FFElem image_of_gen;
    FFElem operator()(const FFElem& x) const;
};

/// Embeds src into dst by sending the generator to the smallest root of src's modulus;
/// throws when deg(src) does not divide deg(dst).
FieldEmbedding embed(const FiniteFieldPtr& src, const FiniteFieldPtr& dst);

}  // namespace galimage
