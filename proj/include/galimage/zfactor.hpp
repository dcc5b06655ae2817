#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "galimage/fp_poly.hpp"
#include "galimage/poly.hpp"

namespace galimage {

struct ZFactor {
    ZPoly factor;  // primitive, positive leading coefficient, irreducible over Q
    int multiplicity;
};

/// Factorisation of a non-constant polynomial over Q into primitive irreducible
/// integer polynomials (Zassenhaus: good prime, Hensel lifting, subset recombination).
/// The content and sign are dropped. Output sorted by (degree, coefficients).
std::vector<ZFactor> factor_over_q(const ZPoly& f);
std::vector<ZFactor> factor_over_q(const QPoly& f);

bool is_irreducible_over_q(const ZPoly& f);

/// Lifts f = lc(f) * prod(u_i) mod p to a factorisation mod p^k.
/// The u_i must be monic, pairwise coprime, and f mod p squarefree.
/// Returned factors are monic with coefficients in [0, p^k).
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& u, std::uint64_t p, int k);

/// Dedekind criterion: true iff Z[x]/(f) is maximal at p (f monic).
bool dedekind_maximal(const ZPoly& f, std::uint64_t p);

/// Coefficients reduced into [0, m).
ZPoly reduce_coeffs(const ZPoly& f, const BigInt& m);
/// Coefficients reduced into (-m/2, m/2].
ZPoly symmetric_coeffs(const ZPoly& f, const BigInt& m);

}  // namespace galimage
