#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galimage/image.hpp"

namespace galimage {

/// The auxiliary primes q_1..q_n (= 1 mod N), p_1..p_m and q that define the exceptional set.
struct Choices {
    std::vector<std::uint64_t> q_list;
    std::vector<std::uint64_t> p_list;
    std::uint64_t q = 0;
    /// Extra primes added to the index bullet (can only enlarge S).
    std::vector<std::uint64_t> extra_index_primes;
};

nlohmann::json to_json(const Choices& c);

/// Throws DataError("invalid choices: ...").
void validate_choices(const NewformRecord& rec, const KLProfile& prof, const Choices& c);

/// Builtin choices for "level27" / "level160"; otherwise a deterministic automatic choice:
/// the two smallest primes = 1 mod N, greedy p_i covering the quadratic characters mod M',
/// and q = the profile's generator prime.
Choices default_choices(const NewformRecord& rec, const KLProfile& prof, const std::string& builtin = "");

/// One entry of S: a single prime lambda, or every prime above ell (lambda == "*").
struct ExceptionalPrime {
    std::uint64_t ell = 0;
    std::string lambda;
    std::vector<std::string> reasons;
};

struct ExceptionalSet {
    std::uint64_t small_bound = 0;  // every lambda above ell <= small_bound is in S
    std::vector<ExceptionalPrime> members;  // sorted by ell, then lambda
    BigInt q_gcd;                   // gcd_i q_i N(r_{q_i} - (1+q_i^{k-1})^2)
    std::vector<std::uint64_t> index_candidates;  // ell^2 | disc(minpoly r_q)
    std::vector<std::uint64_t> index_primes;      // candidates not certified maximal

    bool contains(const PrimeData& lam) const;
    std::vector<std::uint64_t> ells() const;
    /// Reasons for lam, empty when lam is outside S.
    std::vector<std::string> reasons_for(const PrimeData& lam) const;
};

ExceptionalSet exceptional_set(const NewformRecord& rec, const KLProfile& prof, const Choices& choices);
nlohmann::json to_json(const ExceptionalSet& s);

/// Per-lambda bookkeeping for the criteria.
struct CriteriaContext {
    const NewformRecord* rec = nullptr;
    const KLProfile* prof = nullptr;
    PrimeData lam;
    int e0 = 0, e1 = 0, e2 = 0;
    std::uint64_t calM = 0;
    /// Extension of F_lambda large enough to hold F_Lambda and its degree gcd(2, ell) extension.
    FiniteFieldPtr bigF;
    int bigF_degree = 0;  // over F_ell
    FieldEmbedding to_bigF;
    /// (p, r_p mod lambda, r_p / p^{k-1} mod lambda) for sampled p not dividing N ell, ascending.
    struct Sample {
        std::uint64_t p;
        FFElem r;
        FFElem v;
    };
    std::vector<Sample> samples;
};

CriteriaContext make_context(const NewformRecord& rec, const KLProfile& prof, const PrimeData& lam,
                             std::uint64_t prime_search_bound = 10000);

struct ConditionReport {
    bool holds = false;
    std::string how;                 // "vacuous", "clause: ...", "witnesses", "search exhausted"
    nlohmann::json witnesses = nlohmann::json::array();
    nlohmann::json unwitnessed = nlohmann::json::array();
    nlohmann::json to_json() const;
};

/// Primes in `preferred` are tried first, then all samples in increasing order.
ConditionReport check_condition_a(const CriteriaContext& ctx, const std::vector<std::uint64_t>& preferred = {});
ConditionReport check_condition_b(const CriteriaContext& ctx, const std::vector<std::uint64_t>& preferred = {});
ConditionReport check_condition_c(const CriteriaContext& ctx, int k_lambda_degree);
ConditionReport check_condition_d(const CriteriaContext& ctx, int k_lambda_degree);
ConditionReport check_condition_e(const CriteriaContext& ctx, int k_lambda_degree);

struct KLambdaProof {
    bool proved = false;
    int observed_degree = 0;  // [k_lambda : F_ell] seen on the samples (lower bound)
    int residue_degree = 0;
    std::string method;
    std::uint64_t witness = 0;       // p whose residue generates F_lambda
    std::uint64_t index_witness = 0; // p with Z[r_p] maximal at ell, 0 if none found
    nlohmann::json to_json() const;
};

KLambdaProof certify_k_lambda(const CriteriaContext& ctx);

enum class Verdict { PSL2, PGL2, Inconclusive };
std::string to_string(Verdict v);

struct Certificate {
    std::uint64_t ell = 0;
    std::string lambda;
    int residue_degree = 0;
    BigInt field_size;
    Verdict verdict = Verdict::Inconclusive;
    std::string group;   // "PSL2(F_7^3)"
    std::string reason;  // why, or why not
    std::string path;    // "outside S" (cross-checked), "direct conditions" or "none"
    bool in_S = false;
    std::vector<std::string> S_reasons;
    std::vector<std::uint64_t> exceptional_set_used;  // every ell with a prime of S above it
    bool direct_conditions_hold = false;
    bool L_splits = false;
    KLambdaProof k_lambda;
    std::vector<ConditionReport> conditions;  // a..e, empty when skipped
    std::vector<std::string> notes;
    std::string provenance;

    nlohmann::json to_json() const;
};

struct CertifyConfig {
    std::uint64_t prime_search_bound = 10000;
};

/// One certificate per prime of K above ell.
std::vector<Certificate> certify(const NewformRecord& rec, const KLProfile& prof, const Choices& choices,
                                 const ExceptionalSet& S, std::uint64_t ell, const CertifyConfig& cfg = {});

/// Re-checks every recorded witness of a certificate and its verdict logic. Returns the list of
/// problems (empty when the certificate replays).
std::vector<std::string> replay(const NewformRecord& rec, const KLProfile& prof, const ExceptionalSet& S,
                                const nlohmann::json& certificate);

}  // namespace galimage
