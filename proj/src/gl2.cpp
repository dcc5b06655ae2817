#include "galimage/gl2.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace galimage {

SmallField::SmallField(std::uint64_t q) {
    if (q < 2 || q > 121) throw std::invalid_argument("SmallField: q must be a prime power <= 121");
    const auto fac = factor_u64(q);
    if (fac.size() != 1) throw std::invalid_argument("SmallField: q = " + std::to_string(q) + " is not a prime power");
    f_ = FiniteField::of_degree(fac[0].first, fac[0].second);
    q_ = static_cast<int>(q);
    std::vector<FFElem> e;
    for (int i = 0; i < q_; ++i) e.push_back(elem(i));
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int i = 0; i < q_; ++i) {
        neg_[i] = index_of(-e[i]);
        for (int j = 0; j < q_; ++j) {
            add_[i * q_ + j] = index_of(e[i] + e[j]);
            mul_[i * q_ + j] = index_of(e[i] * e[j]);
            if (mul_[i * q_ + j] == 1) inv_[i] = j;
        }
    }
}

int SmallField::inv(int a) const {
    if (a == 0) throw std::domain_error("SmallField: inverse of zero");
    return inv_[a];
}

int SmallField::from_int(long v) const { return index_of(f_->from_int(v)); }

Mat2 mul(const SmallField& F, const Mat2& x, const Mat2& y) {
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

int det(const SmallField& F, const Mat2& x) { return F.sub(F.mul(x.a, x.d), F.mul(x.b, x.c)); }

int trace(const SmallField& F, const Mat2& x) { return F.add(x.a, x.d); }

Mat2 inverse(const SmallField& F, const Mat2& x) {
    const int di = F.inv(det(F, x));
    return {F.mul(x.d, di), F.mul(F.neg(x.b), di), F.mul(F.neg(x.c), di), F.mul(x.a, di)};
}

bool is_scalar(const Mat2& x) { return x.b == 0 && x.c == 0 && x.a == x.d; }

std::uint32_t encode(const SmallField& F, const Mat2& x) {
    const auto q = static_cast<std::uint32_t>(F.q());
    return ((static_cast<std::uint32_t>(x.a) * q + x.b) * q + x.c) * q + x.d;
}

std::vector<Mat2> enumerate_gl2(const SmallField& F) {
    std::vector<Mat2> out;
    const int q = F.q();
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    const Mat2 m{a, b, c, d};
                    if (det(F, m) != 0) out.push_back(m);
                }
    return out;
}

std::vector<Mat2> enumerate_sl2(const SmallField& F) {
    std::vector<Mat2> out;
    for (const auto& m : enumerate_gl2(F))
        if (det(F, m) == 1) out.push_back(m);
    return out;
}

int pgl_order(const SmallField& F, const Mat2& A) {
    if (det(F, A) == 0) throw std::domain_error("pgl_order: singular matrix");
    Mat2 p = A;
    for (int m = 1;; ++m) {
        if (is_scalar(p)) return m;
        p = mul(F, p, A);
    }
}

int trace_det_invariant(const SmallField& F, const Mat2& A) {
    const int t = trace(F, A);
    return F.div(F.mul(t, t), det(F, A));
}

CartanData cartan_and_normalizer(const SmallField& F, bool split) {
    CartanData out;
    const int q = F.q();
    std::vector<Mat2> gens;
    if (split) {
        for (int x = 1; x < q; ++x)
            for (int y = 1; y < q; ++y) out.C.push_back({x, 0, 0, y});
        const int g = F.index_of(F.field()->primitive_element());
        gens = {{g, 0, 0, 1}, {1, 0, 0, g}};
    } else {
        // w^2 = c1 w + c0 with x^2 - c1 x - c0 irreducible; smallest such (c1, c0).
        int c0 = -1, c1 = -1;
        for (int s = 0; s < q && c0 < 0; ++s)
            for (int t = 1; t < q && c0 < 0; ++t) {
                bool root = false;
                for (int x = 0; x < q && !root; ++x) root = F.sub(F.mul(x, x), F.add(F.mul(s, x), t)) == 0;
                if (!root) c1 = s, c0 = t;
            }
        // a + b w acts on (1, w): 1 -> a + b w, w -> b c0 + (a + b c1) w.
        auto rep = [&](int a, int b) { return Mat2{a, F.mul(b, c0), b, F.add(a, F.mul(b, c1))}; };
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                if (a || b) out.C.push_back(rep(a, b));
        const auto order = static_cast<std::size_t>(q) * q - 1;
        for (const auto& m : out.C) {
            std::size_t k = 1;
            for (Mat2 p = m; !(p == Mat2{}); p = mul(F, p, m)) ++k;
            if (k == order) {
                out.generator = m;
                break;
            }
        }
        gens = {out.generator};
    }
    std::unordered_set<std::uint32_t> inC;
    for (const auto& m : out.C) inC.insert(encode(F, m));
    for (const auto& g : enumerate_gl2(F)) {
        const Mat2 gi = inverse(F, g);
        bool ok = true;
        for (const auto& x : gens) ok = ok && inC.count(encode(F, mul(F, mul(F, g, x), gi)));
        if (ok) out.N.push_back(g);
    }
    return out;
}

namespace {

std::uint32_t pgl_class(const SmallField& F, const Mat2& m) {
    // Scale so that the first non-zero entry is 1.
    const int s = F.inv(m.a ? m.a : m.b);
    return encode(F, {F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)});
}

OracleResult order_table(std::uint64_t q) {
    OracleResult r{"order vs tr^2/det table over GL2(F_" + std::to_string(q) + ")", true, ""};
    const SmallField F(q);
    const std::uint64_t ell = F.characteristic();
    std::map<int, std::set<int>> t_to_m;
    const std::map<int, int> expect{{1, F.from_int(4)}, {2, 0}, {3, F.from_int(1)}, {4, F.from_int(2)}};
    std::size_t count = 0;
    for (const auto& A : enumerate_gl2(F)) {
        ++count;
        const int m = pgl_order(F, A), t = trace_det_invariant(F, A);
        bool ok = true;
        if (m % static_cast<int>(ell) == 0)
            ok = t == F.from_int(4);
        else {
            t_to_m[t].insert(m);
            if (expect.count(m)) ok = expect.at(m) == t;
            if (m == 5) ok = F.add(F.sub(F.mul(t, t), F.mul(F.from_int(3), t)), 1) == 0;
        }
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = "order " + std::to_string(m) + " with tr^2/det = " + F.elem(t).str();
        }
    }
    for (const auto& [t, ms] : t_to_m)
        if (ms.size() != 1 && r.pass) {
            r.pass = false;
            r.detail = "tr^2/det = " + F.elem(t).str() + " occurs for several orders";
        }
    if (r.pass) r.detail = std::to_string(count) + " matrices";
    return r;
}

OracleResult cartan(std::uint64_t q, bool split) {
    OracleResult r{std::string(split ? "split" : "non-split") + " Cartan normalizer over F_" + std::to_string(q), true, ""};
    const SmallField F(q);
    const auto cd = cartan_and_normalizer(F, split);
    const std::size_t cq = split ? (q - 1) * (q - 1) : q * q - 1;
    std::unordered_set<std::uint32_t> inC;
    for (const auto& m : cd.C) inC.insert(encode(F, m));
    if (cd.C.size() != cq || cd.N.size() != 2 * cd.C.size()) {
        r.pass = false;
        r.detail = "|C| = " + std::to_string(cd.C.size()) + ", |N| = " + std::to_string(cd.N.size());
        return r;
    }
    for (const auto& g : cd.N) {
        if (inC.count(encode(F, g))) continue;
        if (trace(F, g) != 0 || !is_scalar(mul(F, g, g))) {
            r.pass = false;
            r.detail = "element of N - C with non-zero trace or non-scalar square";
            return r;
        }
    }
    r.detail = "|C| = " + std::to_string(cd.C.size()) + ", |N| = " + std::to_string(cd.N.size());
    return r;
}

std::size_t psl_size(const SmallField& F) {
    std::unordered_set<std::uint32_t> cls;
    for (const auto& m : enumerate_sl2(F)) cls.insert(pgl_class(F, m));
    return cls.size();
}

}  // namespace

std::vector<OracleResult> run_oracle_selftest() {
    std::vector<OracleResult> out;
    for (std::uint64_t q : {3, 5, 7, 9, 11}) out.push_back(order_table(q));
    for (std::uint64_t q : {3, 5, 7, 9, 11})
        for (bool split : {true, false}) out.push_back(cartan(q, split));
    for (std::uint64_t q : {2, 4, 8}) {
        const SmallField F(q);
        std::unordered_set<std::uint32_t> pgl;
        for (const auto& m : enumerate_gl2(F)) pgl.insert(pgl_class(F, m));
        const std::size_t psl = psl_size(F);
        out.push_back({"PSL2 = PGL2 over F_" + std::to_string(q), psl == pgl.size(),
                       std::to_string(psl) + " vs " + std::to_string(pgl.size())});
    }
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11}) {
        const SmallField F(q);
        const std::size_t want = q * (q * q - 1) / (q % 2 ? 2 : 1);
        const std::size_t got = psl_size(F);
        out.push_back({"|PSL2(F_" + std::to_string(q) + ")|", got == want, std::to_string(got)});
    }
    return out;
}

}  // namespace galimage
