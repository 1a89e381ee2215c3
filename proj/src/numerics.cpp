#include "antipt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace antipt::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kDimCap = 64;

bool value_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void require_square_finite(const CMatrix& a, const char* who) {
    if (a.dim() < 1) throw NumericError(std::string(who) + ": empty matrix");
    if (a.dim() > kDimCap) throw NumericError(std::string(who) + ": dimension cap is 64");
    if (!a.finite()) throw NumericError(std::string(who) + ": non-finite entries");
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 0) throw NumericError("CMatrix: negative dimension");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : CMatrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw NumericError("CMatrix: ragged initializer");
        int j = 0;
        for (const auto& v : row) (*this)(i, j++) = v;
        ++i;
    }
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex CMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::inf_norm() const {
    double best = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& v : a_) best = std::max(best, std::abs(v));
    return best;
}

bool CMatrix::finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw NumericError("CMatrix: dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw NumericError("CMatrix: dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw NumericError("CMatrix: dimension mismatch");
    const int n = a.dim();
    CMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<Complex> operator*(const CMatrix& a, const std::vector<Complex>& v) {
    if (static_cast<int>(v.size()) != a.dim()) throw NumericError("matvec: dimension mismatch");
    const int n = a.dim();
    std::vector<Complex> r(n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Complex dot_conj(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Complex dot_unconj(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool Spectrum::all_normalized() const {
    return std::all_of(bio_normalized.begin(), bio_normalized.end(), [](bool b) { return b; });
}

namespace {

// Unitary reduction to upper Hessenberg form, accumulating the transform in q.
void hessenberg(CMatrix& h, CMatrix& q) {
    const int n = h.dim();
    std::vector<Complex> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double norm_col = 0.0;
        for (int i = k + 1; i < n; ++i) norm_col += std::norm(h(i, k));
        norm_col = std::sqrt(norm_col);
        if (norm_col == 0.0) continue;

        std::fill(v.begin(), v.end(), Complex(0.0, 0.0));
        for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
        const Complex pivot = v[k + 1];
        const Complex phase =
            (std::abs(pivot) > 0.0) ? pivot / std::abs(pivot) : Complex(1.0, 0.0);
        v[k + 1] += phase * norm_col;

        double vnorm = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (int i = k + 1; i < n; ++i) v[i] /= vnorm;

        // h <- P h P with P = I - 2 v v^H
        for (int j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (int i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (int j = k + 1; j < n; ++j) s += q(i, j) * v[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct GivensRot {
    int k;
    Complex cs, sn;
};

// Shifted QR iteration driving the Hessenberg matrix t to upper triangular
// Schur form, with the unitary accumulated in z.
void schur_triangularize(CMatrix& t, CMatrix& z) {
    const int n = t.dim();
    const double tnorm = std::max(t.max_abs(), 1e-300);

    int hi = n - 1;
    int iters_at_hi = 0;
    long total = 0;
    const long cap = 200L * n;

    while (hi > 0) {
        int lo = hi;
        bool deflated_above = false;
        while (lo > 0) {
            double s = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
            if (s == 0.0) s = tnorm;
            if (std::abs(t(lo, lo - 1)) <= kEps * s) {
                t(lo, lo - 1) = 0.0;
                deflated_above = true;
                break;
            }
            --lo;
        }
        if (deflated_above && lo == hi) {
            --hi;
            iters_at_hi = 0;
            continue;
        }

        if (++total > cap || ++iters_at_hi > 80)
            throw NumericError("eig: QR iteration failed to converge");

        Complex mu;
        if (iters_at_hi % 16 == 0) {
            // exceptional shift to break symmetric stalls
            mu = t(hi, hi) + Complex(0.9, 0.4) * std::abs(t(hi, hi - 1));
        } else {
            const Complex a = t(hi - 1, hi - 1);
            const Complex b = t(hi - 1, hi);
            const Complex c = t(hi, hi - 1);
            const Complex d = t(hi, hi);
            const Complex m = 0.5 * (a - d);
            const Complex disc = std::sqrt(m * m + b * c);
            const Complex s1 = m + disc;
            const Complex s2 = m - disc;
            const Complex den = (std::abs(s1) >= std::abs(s2)) ? s1 : s2;
            mu = (std::abs(den) > 0.0) ? d - b * c / den : d;
        }

        for (int i = lo; i <= hi; ++i) t(i, i) -= mu;

        std::vector<GivensRot> rots;
        rots.reserve(hi - lo);
        for (int k = lo; k < hi; ++k) {
            const Complex f = t(k, k);
            const Complex g = t(k + 1, k);
            const double r = std::sqrt(std::norm(f) + std::norm(g));
            Complex cs(1.0, 0.0), sn(0.0, 0.0);
            if (r > 0.0) {
                cs = f / r;
                sn = g / r;
            }
            rots.push_back({k, cs, sn});
            for (int j = k; j < n; ++j) {
                const Complex A = t(k, j);
                const Complex B = t(k + 1, j);
                t(k, j) = std::conj(cs) * A + std::conj(sn) * B;
                t(k + 1, j) = -sn * A + cs * B;
            }
            t(k + 1, k) = 0.0;
        }
        for (const auto& rot : rots) {
            const int k = rot.k;
            const int imax = std::min(k + 1, hi);
            for (int i = 0; i <= imax; ++i) {
                const Complex A = t(i, k);
                const Complex B = t(i, k + 1);
                t(i, k) = A * rot.cs + B * rot.sn;
                t(i, k + 1) = -A * std::conj(rot.sn) + B * std::conj(rot.cs);
            }
            for (int i = 0; i < n; ++i) {
                const Complex A = z(i, k);
                const Complex B = z(i, k + 1);
                z(i, k) = A * rot.cs + B * rot.sn;
                z(i, k + 1) = -A * std::conj(rot.sn) + B * std::conj(rot.cs);
            }
        }
        for (int i = lo; i <= hi; ++i) t(i, i) += mu;
    }
}

std::vector<Complex> normalized(std::vector<Complex> v) {
    const double n = norm2(v);
    if (n > 0.0)
        for (auto& x : v) x /= n;
    return v;
}

}  // namespace

Spectrum eig(const CMatrix& a) {
    require_square_finite(a, "eig");
    const int n = a.dim();

    Spectrum sp;
    if (n == 1) {
        sp.values = {a(0, 0)};
        sp.right = {{Complex(1.0, 0.0)}};
        sp.left = {{Complex(1.0, 0.0)}};
        sp.condition = {1.0};
        sp.bio_normalized = {true};
        return sp;
    }

    CMatrix t = a;
    CMatrix z = CMatrix::identity(n);
    hessenberg(t, z);
    schur_triangularize(t, z);

    const double tnorm = std::max(t.max_abs(), 1e-300);
    const double smallden = kEps * tnorm;

    std::vector<Complex> values(n);
    std::vector<std::vector<Complex>> right(n), left(n);

    for (int k = 0; k < n; ++k) {
        values[k] = t(k, k);

        // right eigenvector of the triangular factor, back substitution
        std::vector<Complex> y(n, Complex(0.0, 0.0));
        y[k] = 1.0;
        for (int i = k - 1; i >= 0; --i) {
            Complex s = 0.0;
            for (int j = i + 1; j <= k; ++j) s += t(i, j) * y[j];
            Complex d = t(i, i) - t(k, k);
            if (std::abs(d) < smallden) d = smallden;
            y[i] = -s / d;
            const double m = std::abs(y[i]);
            if (m > 1e100)
                for (int j = i; j <= k; ++j) y[j] /= m;
        }
        right[k] = normalized(z * y);

        // left eigenvector: forward substitution on the conjugate transpose
        std::vector<Complex> w(n, Complex(0.0, 0.0));
        w[k] = 1.0;
        for (int i = k + 1; i < n; ++i) {
            Complex s = 0.0;
            for (int j = k; j < i; ++j) s += std::conj(t(j, i)) * w[j];
            Complex d = std::conj(t(i, i)) - std::conj(t(k, k));
            if (std::abs(d) < smallden) d = smallden;
            w[i] = -s / d;
            const double m = std::abs(w[i]);
            if (m > 1e100)
                for (int j = k; j <= i; ++j) w[j] /= m;
        }
        left[k] = normalized(z * w);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return value_less(values[i], values[j]); });

    sp.values.resize(n);
    sp.right.resize(n);
    sp.left.resize(n);
    sp.condition.resize(n);
    sp.bio_normalized.resize(n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        sp.values[k] = values[src];
        sp.right[k] = std::move(right[src]);
        sp.left[k] = std::move(left[src]);
        const Complex d = dot_conj(sp.left[k], sp.right[k]);
        sp.condition[k] = std::abs(d);
        if (sp.condition[k] >= Spectrum::kDefectiveTol) {
            const Complex scale = std::conj(d);
            for (auto& x : sp.left[k]) x /= scale;
            sp.bio_normalized[k] = true;
        } else {
            sp.bio_normalized[k] = false;
        }
    }
    return sp;
}

CubicRoots cardano(Complex c3, Complex c2, Complex c1, Complex c0) {
    if (std::abs(c3) == 0.0)
        throw NumericError("cardano: leading coefficient is zero, not a cubic");

    const Complex b = c2 / c3;
    const Complex c = c1 / c3;
    const Complex d = c0 / c3;
    const Complex shift = b / 3.0;
    const Complex p = c - b * b / 3.0;
    const Complex q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    std::array<Complex, 3> roots;
    const Complex disc = q * q / 4.0 + p * p * p / 27.0;
    const Complex sq = std::sqrt(disc);
    Complex u3 = -q / 2.0 + sq;
    const Complex u3_alt = -q / 2.0 - sq;
    if (std::abs(u3_alt) > std::abs(u3)) u3 = u3_alt;

    if (std::abs(u3) == 0.0) {
        // p and q both vanish: triple root
        roots = {-shift, -shift, -shift};
    } else {
        const Complex u = std::pow(u3, 1.0 / 3.0);
        const Complex w(-0.5, std::sqrt(3.0) / 2.0);
        Complex uk = u;
        for (int k = 0; k < 3; ++k) {
            roots[k] = uk - p / (3.0 * uk) - shift;
            uk *= w;
        }
    }

    // guarded Newton polish on the original coefficients
    for (auto& x : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex f = ((c3 * x + c2) * x + c1) * x + c0;
            const Complex fp = (3.0 * c3 * x + 2.0 * c2) * x + c1;
            if (std::abs(fp) < 1e-300) break;
            const Complex xn = x - f / fp;
            const Complex fn = ((c3 * xn + c2) * xn + c1) * xn + c0;
            if (std::abs(fn) <= std::abs(f))
                x = xn;
            else
                break;
        }
    }

    std::sort(roots.begin(), roots.end(), value_less);
    return {roots};
}

std::vector<Complex> solve(const CMatrix& a, const std::vector<Complex>& b) {
    require_square_finite(a, "solve");
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n) throw NumericError("solve: rhs dimension mismatch");

    const double anorm = std::max(a.inf_norm(), 1e-300);
    CMatrix lu = a;
    std::vector<Complex> x = b;

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(lu(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best <= 1e-14 * anorm)
            throw NumericError("solve: matrix is singular to working tolerance");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(x[k], x[piv]);
        }
        const Complex inv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) * inv;
            if (f == Complex(0.0, 0.0)) continue;
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        Complex s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

namespace {

// exp(-i a dt) v by plain Taylor summation; dt is kept small by the caller.
std::vector<Complex> taylor_step(const CMatrix& a, std::vector<Complex> v, double dt) {
    std::vector<Complex> sum = v;
    std::vector<Complex> term = std::move(v);
    const Complex factor = -kImag * dt;
    for (int j = 1; j <= 80; ++j) {
        term = a * term;
        const Complex scale = factor / static_cast<double>(j);
        for (auto& x : term) x *= scale;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
        if (norm2(term) <= 1e-18 * std::max(norm2(sum), 1e-300)) break;
    }
    return sum;
}

}  // namespace

std::vector<Complex> expm_times(const CMatrix& a, const std::vector<Complex>& v, double t) {
    require_square_finite(a, "expm_times");
    if (static_cast<int>(v.size()) != a.dim())
        throw NumericError("expm_times: vector dimension mismatch");
    if (t < 0.0) throw NumericError("expm_times: negative time");
    if (t == 0.0) return v;

    bool eig_ok = false;
    Spectrum sp;
    try {
        sp = eig(a);
        eig_ok = sp.all_normalized();
    } catch (const NumericError&) {
        eig_ok = false;
    }

    if (eig_ok) {
        const int n = a.dim();
        std::vector<Complex> out(n, Complex(0.0, 0.0));
        for (int k = 0; k < n; ++k) {
            const Complex amp = dot_conj(sp.left[k], v) * std::exp(-kImag * sp.values[k] * t);
            for (int i = 0; i < n; ++i) out[i] += amp * sp.right[k][i];
        }
        return out;
    }

    // near-defective spectrum: scaled Taylor stepping
    const double scale = std::max(a.inf_norm(), 1e-300);
    const int steps = std::max(1, static_cast<int>(std::ceil(scale * t / 0.5)));
    const double dt = t / steps;
    std::vector<Complex> out = v;
    for (int s = 0; s < steps; ++s) out = taylor_step(a, std::move(out), dt);
    return out;
}

}  // namespace antipt::numerics
