#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "galimage/finite_field.hpp"

namespace galimage {

/// Kronecker symbol (a/n); a and n not both zero.
int kronecker(std::int64_t a, std::int64_t n);

/// (Z/mZ)^x as a product of cyclic groups, one or two generators per prime power
/// (-1 and 5 for 2^e, e >= 3), each generator lifted by CRT.
class UnitGroupStructure {
   public:
    explicit UnitGroupStructure(std::uint64_t m);

    std::uint64_t modulus() const { return m_; }
    const std::vector<std::uint64_t>& generators() const { return gens_; }
    const std::vector<std::uint64_t>& orders() const { return orders_; }
    std::uint64_t group_order() const;
    /// Exponents e with a = prod g_i^e_i mod m, 0 <= e_i < order_i; a coprime to m.
    std::vector<std::uint64_t> exponents(std::int64_t a) const;

   private:
    struct Component {
        std::uint64_t pe;                       // prime power
        std::vector<std::size_t> gen_slots;     // indices into gens_/orders_
        std::vector<std::vector<std::uint64_t>> log;  // residue mod pe -> local exponents
    };
    std::uint64_t m_;
    std::vector<std::uint64_t> gens_, orders_;
    std::vector<Component> comps_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroupStructure>;

/// Shared, cached unit group for modulus m.
UnitGroupPtr unit_group(std::uint64_t m);

/// Character (Z/mZ)^x -> {+-1} given by the sign of each generator.
class QuadChar {
   public:
    QuadChar(UnitGroupPtr g, std::vector<int> signs);
    /// The character a -> (d/a) on (Z/mZ)^x; d must be a discriminant whose conductor divides m.
    static QuadChar from_kronecker(std::int64_t d, std::uint64_t m);

    std::uint64_t modulus() const { return g_->modulus(); }
    const std::vector<int>& signs() const { return signs_; }
    bool is_trivial() const;
    /// 0 when gcd(a, m) > 1.
    int value(std::int64_t a) const;
    std::uint64_t conductor() const;
    std::string describe() const;

    friend bool operator==(const QuadChar& a, const QuadChar& b) {
        return a.modulus() == b.modulus() && a.signs_ == b.signs_;
    }

   private:
    UnitGroupPtr g_;
    std::vector<int> signs_;
};

/// Character (Z/NZ)^x -> F^x given by images of the generators.
class FFChar {
   public:
    FFChar(UnitGroupPtr g, FiniteFieldPtr f, std::vector<FFElem> images);

    std::uint64_t modulus() const { return g_->modulus(); }
    const FiniteFieldPtr& target() const { return f_; }
    const std::vector<FFElem>& images() const { return images_; }
    bool is_trivial() const;
    /// Throws std::domain_error("non-unit argument") when gcd(a, N) > 1.
    FFElem value(std::int64_t a) const;
    std::string describe() const;

   private:
    UnitGroupPtr g_;
    FiniteFieldPtr f_;
    std::vector<FFElem> images_;
};

/// All non-trivial characters (Z/mZ)^x -> {+-1}; there are 2^t - 1 with t the number of
/// even-order generators.
std::vector<QuadChar> enumerate_quadratic_chars(std::uint64_t m);

/// All homomorphisms (Z/NZ)^x -> F^x (trivial one first).
std::vector<FFChar> enumerate_ff_chars(std::uint64_t n, const FiniteFieldPtr& f);

/// char_value conveniences.
inline int char_value(const QuadChar& chi, std::int64_t a) { return chi.value(a); }
inline FFElem char_value(const FFChar& chi, std::int64_t a) { return chi.value(a); }

}  // namespace galimage
