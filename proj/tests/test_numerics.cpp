#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "antipt/numerics.hpp"
#include "oracles.hpp"

using antipt::Complex;
using antipt::kImag;
using antipt::NumericError;
using namespace antipt::numerics;

namespace {

double residual(const CMatrix& a, const std::vector<Complex>& v, Complex lambda) {
    const auto av = a * v;
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::norm(av[i] - lambda * v[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("eig: identity matrix") {
    const auto sp = eig(CMatrix::identity(4));
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(sp.values[k] - 1.0) < 1e-14);
        CHECK(sp.condition[k] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sp.bio_normalized[k]);
    }
}

TEST_CASE("eig: decoupled mirror block has a dark and a doubly-bright mode") {
    // 2x2 block [[-i, -i], [-i, -i]] scaled: omega = 0 version of the
    // anti-symmetric sector, eigenvalues 0 and -2i
    const CMatrix h1{{Complex(0.0, -1.0), Complex(0.0, -1.0)},
                     {Complex(0.0, -1.0), Complex(0.0, -1.0)}};
    const auto sp = eig(h1);
    CHECK(oracles::multiset_distance(sp.values,
                                     {Complex(0.0, 0.0), Complex(0.0, -2.0)}) < 1e-12);
}

TEST_CASE("eig: random 5x5 matches characteristic-polynomial roots") {
    std::mt19937 rng(12345);
    for (int rep = 0; rep < 10; ++rep) {
        const auto a = oracles::random_matrix(rng, 5);
        const auto sp = eig(a);
        const auto coeffs = oracles::characteristic_polynomial(a);
        const auto roots = oracles::polynomial_roots(coeffs);
        CHECK(oracles::multiset_distance(sp.values, roots) < 1e-8);
    }
}

TEST_CASE("eig: residuals, biorthogonality, trace identity") {
    std::mt19937 rng(777);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 11);
        const auto a = oracles::random_matrix(rng, n);
        const auto sp = eig(a);
        const double anorm = a.frobenius_norm();

        Complex vsum = 0.0;
        for (int k = 0; k < n; ++k) {
            vsum += sp.values[k];
            CHECK(residual(a, sp.right[k], sp.values[k]) < 1e-10 * anorm);
            CHECK(residual(a.adjoint(), sp.left[k], std::conj(sp.values[k])) < 1e-10 * anorm);
        }
        CHECK(std::abs(vsum - a.trace()) < 1e-10 * std::max(anorm, 1.0));

        for (int m = 0; m < n; ++m) {
            if (!sp.bio_normalized[m]) continue;
            for (int k = 0; k < n; ++k) {
                if (!sp.bio_normalized[k]) continue;
                const Complex d = dot_conj(sp.left[m], sp.right[k]);
                const double expected = (m == k) ? 1.0 : 0.0;
                CHECK(std::abs(d - expected) < 1e-8);
            }
        }
    }
}

TEST_CASE("eig: complex symmetric matrices have unconjugated-orthogonal right vectors") {
    std::mt19937 rng(4242);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const auto a = oracles::random_complex_symmetric(rng, n);
        const auto sp = eig(a);
        for (int m = 0; m < n; ++m) {
            if (!sp.bio_normalized[m]) continue;
            for (int k = 0; k < n; ++k) {
                if (k == m || !sp.bio_normalized[k]) continue;
                CHECK(std::abs(dot_unconj(sp.right[m], sp.right[k])) < 1e-8);
            }
        }
    }
}

TEST_CASE("eig: near-defective pairs are flagged, not normalized") {
    // Jordan block: defective at machine precision
    const CMatrix j{{Complex(0.0, 0.0), Complex(1.0, 0.0)},
                    {Complex(0.0, 0.0), Complex(0.0, 0.0)}};
    const auto sp = eig(j);
    CHECK_FALSE(sp.bio_normalized[0]);
    CHECK_FALSE(sp.bio_normalized[1]);
    CHECK(sp.condition[0] < 1e-6);
}

TEST_CASE("eig: dimension cap") {
    CHECK_THROWS_AS(eig(CMatrix(65)), NumericError);
}

TEST_CASE("cardano: roots of unity") {
    const auto r = cardano(1.0, 0.0, 0.0, -1.0);
    const std::vector<Complex> expected = {
        Complex(1.0, 0.0),
        std::polar(1.0, 2.0 * std::numbers::pi / 3.0),
        std::polar(1.0, -2.0 * std::numbers::pi / 3.0)};
    CHECK(oracles::multiset_distance({r.roots.begin(), r.roots.end()}, expected) < 1e-14);
}

TEST_CASE("cardano: polariton cubic at matched couplings") {
    // characteristic cubic of the three-level cavity-probe block at
    // omega = gamma = 0.1, zero probe detuning:
    // eigenvalues +-sqrt(0.21) and -2.1i
    const double omega = 0.1, gamma = 0.1;
    const Complex e1 = std::sqrt(Complex(omega * omega + 2.0 * gamma, 0.0));
    const Complex e3 = -kImag * (2.0 + gamma);
    // (x - e1)(x + e1)(x - e3)
    const Complex c2 = -e3;
    const Complex c1 = -e1 * e1;
    const Complex c0 = e1 * e1 * e3;
    const auto r = cardano(1.0, c2, c1, c0);
    const std::vector<Complex> expected = {-e1, e3, e1};
    CHECK(oracles::multiset_distance({r.roots.begin(), r.roots.end()}, expected) < 1e-12);
}

TEST_CASE("cardano: agrees with companion-matrix eigenvalues") {
    std::mt19937 rng(999);
    for (int rep = 0; rep < 1000; ++rep) {
        Complex c3 = oracles::random_complex(rng);
        while (std::abs(c3) < 0.1) c3 = oracles::random_complex(rng);
        const Complex c2 = oracles::random_complex(rng, 2.0);
        const Complex c1 = oracles::random_complex(rng, 2.0);
        const Complex c0 = oracles::random_complex(rng, 2.0);

        const auto r = cardano(c3, c2, c1, c0);
        const CMatrix companion{{-c2 / c3, -c1 / c3, -c0 / c3},
                                {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)},
                                {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0)}};
        const auto sp = eig(companion);
        CHECK(oracles::multiset_distance({r.roots.begin(), r.roots.end()}, sp.values) < 1e-8);

        double cmax = 1.0;
        for (const Complex& c : {c3, c2, c1, c0}) cmax = std::max(cmax, std::abs(c));
        for (const auto& x : r.roots) {
            const Complex p = ((c3 * x + c2) * x + c1) * x + c0;
            const double xmag = std::max(1.0, std::abs(x));
            CHECK(std::abs(p) < 1e-10 * cmax * xmag * xmag * xmag);
        }
    }
}

TEST_CASE("cardano: degree error") {
    CHECK_THROWS_AS(cardano(0.0, 1.0, 1.0, 1.0), NumericError);
}

TEST_CASE("solve: identity and diagonal") {
    const std::vector<Complex> b = {Complex(1.0, 2.0), Complex(-3.0, 0.5)};
    const auto x = solve(CMatrix::identity(2), b);
    CHECK(std::abs(x[0] - b[0]) < 1e-15);
    CHECK(std::abs(x[1] - b[1]) < 1e-15);

    const CMatrix d{{Complex(0.0, 2.0), Complex(0.0, 0.0)},
                    {Complex(0.0, 0.0), Complex(3.0, 0.0)}};
    const auto y = solve(d, {Complex(1.0, 0.0), Complex(1.0, 0.0)});
    CHECK(std::abs(y[0] - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(y[1] - Complex(1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("solve: resolvent of the dimer at zero detuning matches the analytic inverse") {
    // M = 0*I - H with H = [[-i, 1], [1, -i]]
    const CMatrix m{{Complex(0.0, 1.0), Complex(-1.0, 0.0)},
                    {Complex(-1.0, 0.0), Complex(0.0, 1.0)}};
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    for (int col = 0; col < 2; ++col) {
        std::vector<Complex> e(2, Complex(0.0, 0.0));
        e[col] = 1.0;
        const auto x = solve(m, e);
        // analytic 2x2 inverse column
        const Complex i00 = m(1, 1) / det, i01 = -m(0, 1) / det;
        const Complex i10 = -m(1, 0) / det, i11 = m(0, 0) / det;
        const Complex want0 = (col == 0) ? i00 : i01;
        const Complex want1 = (col == 0) ? i10 : i11;
        CHECK(std::abs(x[0] - want0) < 1e-12);
        CHECK(std::abs(x[1] - want1) < 1e-12);
    }
}

TEST_CASE("solve: residual contract on random systems") {
    std::mt19937 rng(31415);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const auto a = oracles::random_matrix(rng, n);
        std::vector<Complex> b(n);
        for (auto& v : b) v = oracles::random_complex(rng);
        const auto x = solve(a, b);
        const auto ax = a * x;
        double res = 0.0;
        for (int i = 0; i < n; ++i) res += std::norm(ax[i] - b[i]);
        res = std::sqrt(res);
        const double bound =
            1e-10 * (a.frobenius_norm() * norm2(x) + norm2(b));
        CHECK(res < bound);
    }
}

TEST_CASE("solve: singular matrix rejected") {
    const CMatrix s{{Complex(1.0, 0.0), Complex(2.0, 0.0)},
                    {Complex(2.0, 0.0), Complex(4.0, 0.0)}};
    CHECK_THROWS_AS(solve(s, {Complex(1.0, 0.0), Complex(0.0, 0.0)}), NumericError);
}

TEST_CASE("expm_times: zero generator and pure decay") {
    const std::vector<Complex> v = {Complex(0.3, 0.1), Complex(-0.2, 0.9)};
    const auto same = expm_times(CMatrix(2), v, 3.7);
    CHECK(std::abs(same[0] - v[0]) < 1e-12);
    CHECK(std::abs(same[1] - v[1]) < 1e-12);

    // a = diag(-i Gamma): exp(-i a t) = diag(exp(-Gamma t))
    const double gamma = 0.8, t = 1.3;
    CMatrix a(2);
    a(0, 0) = -kImag * gamma;
    a(1, 1) = -kImag * gamma;
    const auto decayed = expm_times(a, v, t);
    const double factor = std::exp(-gamma * t);
    CHECK(std::abs(decayed[0] - factor * v[0]) < 1e-12);
    CHECK(std::abs(decayed[1] - factor * v[1]) < 1e-12);
}

TEST_CASE("expm_times: semigroup property") {
    std::mt19937 rng(2718);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto a = oracles::random_matrix(rng, n);
        std::vector<Complex> v(n);
        for (auto& x : v) x = oracles::random_complex(rng);
        const double t1 = 0.4, t2 = 0.9;
        const auto one_shot = expm_times(a, v, t1 + t2);
        const auto two_step = expm_times(a, expm_times(a, v, t1), t2);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) diff += std::norm(one_shot[i] - two_step[i]);
        CHECK(std::sqrt(diff) < 1e-8 * std::max(1.0, norm2(one_shot)));
    }
}

TEST_CASE("expm_times: defective generator uses the stepping fallback") {
    // Jordan block J = [[0,1],[0,0]]: exp(-i J t) v = (v0 - i t v1, v1)
    const CMatrix j{{Complex(0.0, 0.0), Complex(1.0, 0.0)},
                    {Complex(0.0, 0.0), Complex(0.0, 0.0)}};
    const std::vector<Complex> v = {Complex(0.5, -0.25), Complex(1.0, 0.75)};
    const double t = 2.0;
    const auto out = expm_times(j, v, t);
    CHECK(std::abs(out[0] - (v[0] - kImag * t * v[1])) < 1e-10);
    CHECK(std::abs(out[1] - v[1]) < 1e-10);
}
