#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "galimage/characters.hpp"
#include "galimage/number_field.hpp"
#include "galimage/qexp.hpp"

namespace galimage {

inline NFElement scale(const NFElement& x, const BigInt& c) { return x * BigRat(c); }

/// Error raised while reading or validating coefficient data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A newform f = sum a_n q^n with quadratic nebentypus eps(a) = (D/a).
struct NewformRecord {
    std::uint64_t level = 0;
    int weight = 0;
    std::int64_t nebentypus_disc = 1;
    NumberFieldPtr field;
    std::vector<NFElement> coeffs;  // coeffs[n] = a_n, coeffs[0] = 0
    std::string source;

    std::uint64_t precision() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    /// Throws DataError("coefficient missing") past the precision.
    const NFElement& a(std::uint64_t n) const;
    int eps(std::int64_t n) const { return kronecker(nebentypus_disc, n); }
};

/// Gates applied by every loader: a_1 = 1, eps defined mod N, r_p integral for p not dividing N,
/// Hecke relations. Throws DataError.
void validate(const NewformRecord& rec);

/// CoefficientFileV1 <-> record. from_json validates.
nlohmann::json to_json(const NewformRecord& rec);
NewformRecord from_json(const nlohmann::json& doc);
/// Canonical text: compact JSON plus trailing newline; load(save(r)) round-trips bytes.
std::string serialize(const NewformRecord& rec);

NewformRecord load_file(const std::string& path);
void save_file(const NewformRecord& rec, const std::string& path);

/// r_p = a_p^2 / eps(p). Throws DataError when p | N or a_p is missing.
NFElement r_invariant(const NewformRecord& rec, std::uint64_t p);

/// The level 27 weight 3 form over Q(i), computed from its theta/eta formula.
NewformRecord level27_record(int precision = 2000);

/// Directory holding the shipped fixtures; GALIMAGE_DATA_DIR in the environment wins.
std::string data_dir();

/// "level27" (computed) or "level160" (shipped fixture). Results are cached.
const NewformRecord& builtin_form(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace galimage
