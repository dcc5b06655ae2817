#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace galimage {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigInt parse_bigint(std::string_view text);
/// Accepts "a" or "a/b"; the result is canonical (lowest terms, positive denominator).
BigRat parse_bigrat(std::string_view text);

std::string to_string(const BigInt& x);
std::string to_string(const BigRat& x);

BigInt pow(const BigInt& base, unsigned long exponent);
BigRat pow(const BigRat& base, long exponent);

/// Non-negative residue of x modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& x, std::uint64_t m);

/// Largest e with p^e | x; x must be non-zero.
int valuation(const BigInt& x, const BigInt& p);
int valuation(const BigRat& x, const BigInt& p);

bool is_prime(const BigInt& n);
bool is_prime_u64(std::uint64_t n);

/// Sorted list of primes <= bound.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Prime factorisation of |n| (n != 0) as ascending (prime, exponent) pairs.
/// Trial division to 10^6, then Brent–Pollard rho on the cofactor.
std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n);

/// Distinct prime divisors of |n|; empty for n = +-1, throws for n = 0.
std::vector<BigInt> prime_divisors(const BigInt& n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t euler_phi(std::uint64_t n);

/// Prime factorisation of a machine integer (n >= 1) by trial division.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

}  // namespace galimage
