#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/int_matrix.hpp"
#include "shiftlab/shift_spaces.hpp"

namespace shiftlab {

inline constexpr double kPerronTol = 1e-12;
inline constexpr double kCheckTol = 1e-9;
inline constexpr std::size_t kPerronIterationCap = 1'000'000;

// A a = beta a, A^t b = beta b, a, b > 0, sum_i a_i b_i = 1 and
// |a|_1 = |b|_1.  residual is the larger relative max-norm residual
// |M x - beta x|_inf / (beta |x|_inf) of the two eigen-equations.
struct PerronData {
  double beta = 0;
  std::vector<double> a;
  std::vector<double> b;
  double residual = 0;
  double tol = kPerronTol;
};

// Power iteration from the uniform vector; A + I when A is periodic.
// Throws std::invalid_argument for reducible input and std::runtime_error
// if the residual stays above tol after kPerronIterationCap steps.
PerronData perron(const IntMatrix& A, double tol = kPerronTol);

double entropy(const IntMatrix& A);

struct CylinderMeasure {
  double value = 0;
  bool admissible = false;  // false: the cylinder is empty and value is 0
};

// b_{w_1} a_{w_L} beta^{-(L-1)}.  A must be 0-1 and irreducible, |w| >= 1.
CylinderMeasure parry_cylinder(const IntMatrix& A, const Word& w);
CylinderMeasure parry_cylinder(const IntMatrix& A, const PerronData& pd, const Word& w);

struct ParryReport {
  std::size_t length = 0;
  std::size_t word_count = 0;
  double total = 0;            // sum over B_L
  double total_error = 0;      // |total - 1|
  double right_error = 0;      // max_w |mu(w) - sum_j A(w_L, j) mu(wj)|
  double left_error = 0;       // max_w |mu(w) - sum_i A(i, w_1) mu(iw)|
  double tol = kCheckTol;

  bool passed() const { return total_error <= tol && right_error <= tol && left_error <= tol; }
};

ParryReport parry_consistency(const IntMatrix& A, std::size_t L, double tol = kCheckTol);

struct KmsTable {
  std::size_t n = 0;
  std::vector<std::vector<double>> p;  // p_n(i, j) = b_i a_j / beta^{n+1}
  PerronData perron;
};

// A must be aperiodic.
KmsTable kms_values(const IntMatrix& A, std::size_t n);
KmsTable kms_values(const IntMatrix& A, std::size_t n, const PerronData& pd);

struct KmsCheck {
  std::string name;
  std::size_t n = 0;
  double error = 0;
};

struct KmsReport {
  std::size_t n0 = 0;
  std::size_t n_max = 0;
  bool symmetric = false;  // whether the transposed total was checked
  double tol = kCheckTol;
  std::vector<KmsCheck> checks;  // worst error per identity and n

  double max_error() const;
  bool passed() const { return max_error() <= tol; }
  std::vector<KmsCheck> failures() const;
};

// For n0 <= n <= n_max:
//   p_n = beta p_{n+1};
//   p_n(i,j) = sum_k A(j,k) p_{n+1}(i,k) = sum_h A(h,i) p_{n+1}(h,j);
//   beta p_n(i,j) = sum_k A(j,k) p_n(i,k) = sum_h A(h,i) p_n(h,j);
//   sum_j A^{n+1}(i,j) p_n(i,j) = a_i b_i and sum_i A^{n+1}(i,j) p_n(i,j) = a_j b_j;
//   sum_{i,j} A^{n+1}(i,j) p_n(i,j) = 1;
//   sum_{i,j} A^{n+1}(j,i) p_n(i,j) = 1, only for symmetric A.
// `override_data` replaces the Perron data (negative controls).
// Throws std::invalid_argument if A is not aperiodic or n_max < n0.
KmsReport kms_verify(const IntMatrix& A, std::size_t n_max, double tol = kCheckTol,
                     const std::optional<PerronData>& override_data = std::nullopt);

// log beta.  Throws std::invalid_argument for permutation or
// non-aperiodic matrices.
double kms_temperature(const IntMatrix& A);

}  // namespace shiftlab
