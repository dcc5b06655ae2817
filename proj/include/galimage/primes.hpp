#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "galimage/finite_field.hpp"
#include "galimage/linalg.hpp"
#include "galimage/number_field.hpp"

namespace galimage {

/// A prime lambda of the maximal order of K above ell, described through an
/// ell-maximal monogenic order Z[gen]: lambda = (ell, local_factor(gen)).
struct PrimeData {
    std::uint64_t ell = 0;
    NumberFieldPtr field;
    NFElement generator;          // integral, Q(generator) = K, Z[generator] maximal at ell
    ZPoly generator_minpoly;      // monic integer minimal polynomial of generator
    QMatrix to_generator_basis;   // power-basis coords of K -> coords in 1, gen, gen^2, ...
    FpPoly local_factor;          // monic irreducible factor of generator_minpoly mod ell
    int residue_degree = 0;       // f = deg(local_factor)
    int ramification = 1;         // multiplicity of local_factor
    int primes_above_ell = 0;     // number of primes of K above ell
    FiniteFieldPtr residue_field; // F_lambda = F_ell[t]/(local_factor)

    bool unique_above() const { return primes_above_ell == 1; }
    /// "(ell, t^3 + ...)" with t standing for the generator.
    std::string describe() const;
};

struct PrimesAboveOptions {
    /// Extra integral elements to try as generators when K.gen() is obstructed at ell.
    std::vector<NFElement> candidate_generators;
    /// Trust Z[K.gen()] to be maximal at ell without a certificate.
    bool assume_maximal = false;
    /// Search elements beta/ell, beta in Z[gen], for an ell-maximal generator.
    bool search_overorder = true;
};

/// One PrimeData per irreducible factor. Throws std::domain_error("index-obstructed prime ...")
/// when no ell-maximal monogenic order is found.
std::vector<PrimeData> primes_above(const NumberFieldPtr& k, std::uint64_t ell, const PrimesAboveOptions& opts = {});

/// True when Z[alpha] (alpha integral of full degree) is maximal at ell: ell^2 does not divide
/// disc(minpoly) or the Dedekind criterion holds.
bool order_maximal_at(const ZPoly& minpoly, std::uint64_t ell);

/// Reduction R -> F_lambda. Throws std::domain_error("non-integral at lambda") when a
/// denominator (in the generator basis) is divisible by ell.
FFElem reduce_mod(const NFElement& x, const PrimeData& lam);
/// Reduction of a rational number.
FFElem reduce_mod(const BigRat& x, const PrimeData& lam);

struct CompletionSquare {
    int valuation;  // INT_MAX for x = 0
    bool is_square;
};

/// lambda-adic valuation and squareness in the completion K_lambda, for odd ell when K = Q or
/// lambda is the unique prime above ell. Throws std::domain_error("valuation unsupported") and
/// std::domain_error("even-characteristic") in the unsupported cases.
CompletionSquare valuation_and_square_in_completion(const NFElement& x, const PrimeData& lam);

}  // namespace galimage
