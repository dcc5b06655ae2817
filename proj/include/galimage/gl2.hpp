#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galimage/finite_field.hpp"

namespace galimage {

/// F_q (q <= 121) with elements encoded as indices 0..q-1 and tabulated arithmetic.
/// Index 0 is zero and index 1 is one; the encoding is FFElem::index().
class SmallField {
   public:
    explicit SmallField(std::uint64_t q);

    int q() const { return q_; }
    std::uint64_t characteristic() const { return f_->characteristic(); }
    const FiniteFieldPtr& field() const { return f_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const;
    int div(int a, int b) const { return mul(a, inv(b)); }
    int from_int(long v) const;
    FFElem elem(int a) const { return f_->from_index(static_cast<std::uint64_t>(a)); }
    int index_of(const FFElem& x) const { return static_cast<int>(x.index()); }

   private:
    FiniteFieldPtr f_;
    int q_;
    std::vector<int> add_, mul_, neg_, inv_;
};

struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mul(const SmallField& F, const Mat2& x, const Mat2& y);
int det(const SmallField& F, const Mat2& x);
int trace(const SmallField& F, const Mat2& x);
Mat2 inverse(const SmallField& F, const Mat2& x);
bool is_scalar(const Mat2& x);
/// Dense code in [0, q^4).
std::uint32_t encode(const SmallField& F, const Mat2& x);

std::vector<Mat2> enumerate_gl2(const SmallField& F);
std::vector<Mat2> enumerate_sl2(const SmallField& F);

/// Least m >= 1 with A^m scalar. A invertible.
int pgl_order(const SmallField& F, const Mat2& A);
/// tr(A)^2 / det(A), as a field index.
int trace_det_invariant(const SmallField& F, const Mat2& A);

struct CartanData {
    std::vector<Mat2> C;  // Cartan subgroup
    std::vector<Mat2> N;  // its normalizer in GL2
    Mat2 generator;       // non-split: the regular representation of a generator of F_{q^2}^x
};

/// Split: diagonal matrices. Non-split: multiplication by F_{q^2}^x on the basis (1, w).
CartanData cartan_and_normalizer(const SmallField& F, bool split);

struct OracleResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The exhaustive suites: the order / tr^2/det table over GL2(F_q) for q in {3,5,7,9,11},
/// Cartan normalizers for the same q, PSL2 = PGL2 for q in {2,4,8} and |PSL2(F_q)|.
std::vector<OracleResult> run_oracle_selftest();

}  // namespace galimage
