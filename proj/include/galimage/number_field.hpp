#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galimage/poly.hpp"

namespace galimage {

class NFElement;

/// Q[x]/(f) for a monic irreducible integer polynomial f.
class NumberField : public std::enable_shared_from_this<NumberField> {
   public:
    /// Throws std::invalid_argument unless f is monic and irreducible over Q.
    static std::shared_ptr<const NumberField> create(const ZPoly& f, std::string name = "");
    static std::shared_ptr<const NumberField> rationals();

    const ZPoly& poly() const { return f_; }
    const QPoly& qpoly() const { return fq_; }
    int degree() const { return f_.degree(); }
    const std::string& name() const { return name_; }
    const BigInt& poly_discriminant() const { return disc_; }

    NFElement gen() const;
    NFElement from_rational(const BigRat& v) const;
    NFElement from_coords(const QPoly& coords) const;
    NFElement from_coords(const std::vector<BigRat>& coords) const;

   private:
    NumberField(ZPoly f, std::string name);
    ZPoly f_;
    QPoly fq_;
    BigInt disc_;
    std::string name_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

class NFElement {
   public:
    NFElement() = default;
    NFElement(NumberFieldPtr field, QPoly coords);

    const NumberFieldPtr& field() const { return k_; }
    const QPoly& poly() const { return c_; }
    /// Power-basis coordinates, exactly degree() entries.
    std::vector<BigRat> coords() const;

    bool is_zero() const { return c_.is_zero(); }
    bool is_rational() const { return c_.degree() <= 0; }
    BigRat rational_value() const;

    NFElement& operator+=(const NFElement& o);
    NFElement& operator-=(const NFElement& o);
    NFElement& operator*=(const NFElement& o);
    NFElement& operator*=(const BigRat& s);
    friend NFElement operator+(NFElement a, const NFElement& b) { return a += b; }
    friend NFElement operator-(NFElement a, const NFElement& b) { return a -= b; }
    friend NFElement operator*(NFElement a, const NFElement& b) { return a *= b; }
    friend NFElement operator*(NFElement a, const BigRat& s) { return a *= s; }
    friend NFElement operator*(const BigRat& s, NFElement a) { return a *= s; }
    friend NFElement operator-(const NFElement& a);
    friend NFElement operator/(const NFElement& a, const NFElement& b) { return a * b.inverse(); }
    friend bool operator==(const NFElement& a, const NFElement& b);
    friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

    NFElement inverse() const;
    NFElement pow(long e) const;

    std::string str(const std::string& var = "x") const { return c_.str(var); }

   private:
    NumberFieldPtr k_;
    QPoly c_;
};

/// N_{K/Q}(x) = Res(f, coords) for monic f.
BigRat nf_norm(const NFElement& x);
BigRat nf_trace(const NFElement& x);
/// Monic minimal polynomial over Q.
QPoly minpoly_over_Q(const NFElement& x);
/// Characteristic polynomial of multiplication by x (degree [K:Q]).
QPoly charpoly(const NFElement& x);
/// True iff the minimal polynomial of x has integer coefficients.
bool is_integral(const NFElement& x);

/// Evaluates a rational polynomial at a field element.
NFElement eval(const QPoly& p, const NFElement& x);

/// Writes alpha as a polynomial of degree < d in beta, where d = deg minpoly(beta),
/// or nullopt when alpha is not in Q(beta).
std::optional<QPoly> express_in(const NFElement& alpha, const NFElement& beta);

/// Dense polynomial with coefficients in a number field, ascending order.
class NFPoly {
   public:
    NFPoly() = default;
    NFPoly(NumberFieldPtr k, std::vector<NFElement> coeffs);
    static NFPoly from_qpoly(NumberFieldPtr k, const QPoly& p);

    const NumberFieldPtr& field() const { return k_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const NFElement& lead() const { return c_.back(); }
    const std::vector<NFElement>& coeffs() const { return c_; }
    NFElement coeff(int i) const;

    friend NFPoly operator+(const NFPoly& a, const NFPoly& b);
    friend NFPoly operator-(const NFPoly& a, const NFPoly& b);
    friend NFPoly operator*(const NFPoly& a, const NFPoly& b);
    friend bool operator==(const NFPoly& a, const NFPoly& b);

    NFElement eval(const NFElement& x) const;
    NFPoly monic() const;
    /// p(x + s).
    NFPoly shift(const NFElement& s) const;

   private:
    void trim();
    NumberFieldPtr k_;
    std::vector<NFElement> c_;
};

std::pair<NFPoly, NFPoly> divmod(const NFPoly& a, const NFPoly& b);
NFPoly gcd(NFPoly a, NFPoly b);

/// Norm of h in Q[x]: product of the conjugates of h under the embeddings of K.
QPoly norm_poly(const NFPoly& h);

/// Monic irreducible factors of a squarefree polynomial over K (Trager).
std::vector<NFPoly> factor_squarefree_over_field(const NFPoly& h);

/// Roots in K of a non-zero polynomial over K.
std::vector<NFElement> roots_in_field(const NFPoly& h);

/// Some y in K with y^2 = x, or nullopt.
std::optional<NFElement> sqrt_in_field(const NFElement& x);

}  // namespace galimage
