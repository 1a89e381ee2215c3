#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace antipt {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

/// Raised by numeric kernels and physics routines on invalid input,
/// singular systems, or failed iterations.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& message) : std::runtime_error(message) {}
};

namespace numerics {

/// Dense square complex matrix, row-major. Dimensions in this project stay
/// tiny (cap 64), so no blocking or sparsity is attempted.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(int dim);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * dim_ + j];
    }

    CMatrix transpose() const;
    CMatrix adjoint() const;
    Complex trace() const;

    double frobenius_norm() const;
    double inf_norm() const;  // max absolute row sum
    double max_abs() const;
    bool finite() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

  private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
std::vector<Complex> operator*(const CMatrix& a, const std::vector<Complex>& v);

double norm2(const std::vector<Complex>& v);
Complex dot_conj(const std::vector<Complex>& a, const std::vector<Complex>& b);    // a^H b
Complex dot_unconj(const std::vector<Complex>& a, const std::vector<Complex>& b);  // a^T b

/// Full eigensystem of a general complex matrix with paired left and right
/// eigenvectors. Left vectors are eigenvectors of the conjugate transpose to
/// the conjugated eigenvalue, so pair n satisfies  A R_n = v_n R_n  and
/// A^H L_n = conj(v_n) L_n.
///
/// Right vectors keep unit 2-norm. Where the pair is well conditioned
/// (condition >= kDefectiveTol) the left vector is rescaled so that
/// <L_n|R_m> = delta_nm; near-defective pairs are flagged instead and keep
/// unit norm.
struct Spectrum {
    std::vector<Complex> values;              // sorted by (Re, Im) ascending
    std::vector<std::vector<Complex>> right;  // unit 2-norm
    std::vector<std::vector<Complex>> left;
    std::vector<double> condition;      // |<L|R>| of the unit-norm pair
    std::vector<bool> bio_normalized;   // biorthogonal scaling applied

    static constexpr double kDefectiveTol = 1e-6;
    bool all_normalized() const;
};

Spectrum eig(const CMatrix& a);

struct CubicRoots {
    std::array<Complex, 3> roots;  // sorted by (Re, Im) ascending, multiplicities kept
};

/// All three roots of c3 x^3 + c2 x^2 + c1 x + c0 via the depressed-cubic
/// radical formula with a guarded Newton polish.
CubicRoots cardano(Complex c3, Complex c2, Complex c1, Complex c0);

/// x with a x = b, LU with partial pivoting. Rejects matrices whose smallest
/// pivot falls below 1e-14 * |a|_inf.
std::vector<Complex> solve(const CMatrix& a, const std::vector<Complex>& b);

/// exp(-i a t) v. Uses the eigendecomposition when every eigenpair is well
/// conditioned, otherwise falls back to scaled Taylor stepping.
std::vector<Complex> expm_times(const CMatrix& a, const std::vector<Complex>& v, double t);

}  // namespace numerics
}  // namespace antipt
