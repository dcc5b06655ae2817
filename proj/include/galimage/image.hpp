#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "galimage/newform.hpp"
#include "galimage/primes.hpp"

namespace galimage {

/// K = Q(r_p : p not dividing N) as the abstract field Q[x]/(minpoly r_q), and the data
/// describing L = K(sqrt r_p).
struct KLProfile {
    NumberFieldPtr K;
    int k_degree = 1;
    std::uint64_t generator_prime = 0;  // q with K = Q(r_q)
    std::size_t sampled_primes = 0;
    bool degree_stable = false;         // every sampled r_p lies in Q(r_q)
    std::vector<std::string> assumptions;

    std::uint64_t M = 0;                // N for N odd, 4N for N even
    std::vector<std::uint64_t> generating_primes;
    bool L_equals_K = false;
    std::vector<NFElement> sqrt_witnesses;  // y_i in K with y_i^2 = r_{p_i} when L = K

    std::map<std::uint64_t, NFElement> r;   // r_p as elements of K, p sampled

    /// r_p in K; throws std::out_of_range for unsampled p.
    const NFElement& r_in_K(std::uint64_t p) const { return r.at(p); }
};

struct FindKResult {
    std::uint64_t q;
    NumberFieldPtr K;
    NFElement r_q;  // in E
    std::size_t sampled;
    bool stable;
};

/// First prime q not dividing N maximising deg minpoly(r_q) over p <= search_bound.
/// Throws DataError("insufficient coefficients") when nothing can be sampled.
FindKResult find_K(const NewformRecord& rec, std::uint64_t search_bound = 2000);

/// Greedy: the smallest primes p not dividing N with r_p != 0, each enlarging the subgroup
/// of (Z/MZ)^x they generate, until it is everything.
std::vector<std::uint64_t> choose_generating_primes(const NewformRecord& rec, std::uint64_t M);

/// Subgroup of (Z/MZ)^x generated by gens, as a membership table indexed by residue.
std::vector<bool> generated_subgroup(const std::vector<std::uint64_t>& gens, std::uint64_t M);

/// find_K, generating primes, the L = K test and all sampled r_p in K.
KLProfile analyze(const NewformRecord& rec, std::uint64_t search_bound = 2000);

/// Generators of K to try when Z[r_q] is not maximal at some ell: the sampled r_p of full degree.
std::vector<NFElement> alternate_generators(const KLProfile& prof, std::size_t limit = 12);

/// Primes of K above ell, using the profile's alternate generators for obstructed ell.
std::vector<PrimeData> primes_of_K(const KLProfile& prof, std::uint64_t ell);

/// lambda splits completely in L iff every r_{p_i} is a square in K_lambda.
/// Throws std::domain_error for ell = 2 unless L = K.
bool L_splitting_test(const KLProfile& prof, const PrimeData& lam);

enum class ImageType { PSL2, PGL2, Undetermined };
std::string to_string(ImageType t);

/// PSL2 vs PGL2 for the projective image, once the dichotomy is known.
ImageType decide_psl_vs_pgl(int k, std::uint64_t N, const PrimeData& lam, bool splits);

/// JSON view of a profile.
nlohmann::json to_json(const KLProfile& prof);

}  // namespace galimage
