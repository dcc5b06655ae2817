#include "galimage/qexp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace galimage {

GaussInt GaussInt::half() const {
    if (!mpz_even_p(re.get_mpz_t()) || !mpz_even_p(im.get_mpz_t())) throw std::domain_error("non-integral coefficient");
    return {BigInt(re / 2), BigInt(im / 2)};
}

std::string GaussInt::str() const {
    if (im == 0) return re.get_str();
    std::string imag = im == 1 ? "i" : im == -1 ? "-i" : im.get_str() + "i";
    if (re == 0) return imag;
    return re.get_str() + (im > 0 ? "+" : "") + imag;
}

QSeries QSeries::truncate(int b) const {
    std::vector<GaussInt> c(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), static_cast<std::size_t>(b) + 1));
    return QSeries(std::move(c));
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.precision(), b.precision()));
    for (int n = 0; n <= r.precision(); ++n) r[n] = a[n] + b[n];
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.precision(), b.precision()));
    for (int n = 0; n <= r.precision(); ++n) r[n] = a[n] - b[n];
    return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    const int p = std::min(a.precision(), b.precision());
    QSeries r(p);
    for (int i = 0; i <= p; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= p; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

QSeries operator*(const GaussInt& s, const QSeries& a) {
    QSeries r(a.precision());
    for (int n = 0; n <= a.precision(); ++n) r[n] = s * a[n];
    return r;
}

QSeries eta_product_g(int b) {
    if (b < 1) throw std::invalid_argument("precision must be >= 1");
    // Product part through q^{b-1}, multiplied in place by each (1 - q^m).
    std::vector<BigInt> c(static_cast<std::size_t>(b), BigInt(0));
    c[0] = 1;
    auto times = [&](int m) {
        for (int j = b - 1; j >= m; --j) c[static_cast<std::size_t>(j)] -= c[static_cast<std::size_t>(j - m)];
    };
    for (int n = 1; 3 * n <= b - 1; ++n) {
        times(3 * n);
        times(3 * n);
    }
    for (int n = 1; 9 * n <= b - 1; ++n) {
        times(9 * n);
        times(9 * n);
    }
    QSeries g(b);
    for (int j = 0; j < b; ++j) g[j + 1] = GaussInt(c[static_cast<std::size_t>(j)]);
    return g;
}

QSeries theta_j(int j, int b) {
    if (b < 1) throw std::invalid_argument("precision must be >= 1");
    if (j < 0 || j > 2) throw std::invalid_argument("theta index must be 0, 1 or 2");
    const long scale = j == 0 ? 1 : j == 1 ? 3 : 9;
    const long bound = static_cast<long>(std::sqrt(2.0 * b / scale)) + 1;
    std::vector<long> count(static_cast<std::size_t>(b) + 1, 0);
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            const long n = scale * (x * x + x * y + y * y);
            if (n <= b) ++count[static_cast<std::size_t>(n)];
        }
    QSeries t(b);
    for (int n = 0; n <= b; ++n) t[n] = GaussInt(count[static_cast<std::size_t>(n)]);
    return t;
}

std::vector<GaussInt> build_level27_newform(int b) {
    const QSeries g = eta_product_g(b);
    const GaussInt i = GaussInt::i();
    const QSeries twice = i * (g * theta_j(0, b)) - GaussInt(BigInt(1), BigInt(1)) * (g * theta_j(1, b)) +
                          GaussInt(3) * (g * theta_j(2, b));
    std::vector<GaussInt> a(static_cast<std::size_t>(b) + 1);
    for (int n = 0; n <= b; ++n) a[static_cast<std::size_t>(n)] = twice[n].half();
    if (!(a[1] == GaussInt(1))) throw std::logic_error("level 27 form is not normalised");
    return a;
}

}  // namespace galimage
