#include "shiftlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shiftlab {

namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const IntMatrix& A) {
  Dense d(A.rows(), std::vector<double>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) d[i][j] = A(i, j).get_d();
  return d;
}

std::vector<double> multiply(const Dense& M, const std::vector<double>& x) {
  std::vector<double> y(M.size(), 0.0);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += M[i][j] * x[j];
  return y;
}

Dense transpose(const Dense& M) {
  Dense t(M.empty() ? 0 : M[0].size(), std::vector<double>(M.size()));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) t[j][i] = M[i][j];
  return t;
}

double sum(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0); }

double max_abs(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

// |M x - mu x|_inf / (mu |x|_inf)
double relative_residual(const Dense& M, const std::vector<double>& x, double mu) {
  const std::vector<double> y = multiply(M, x);
  double r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::fabs(y[i] - mu * x[i]));
  return r / (mu * max_abs(x));
}

// Dominant eigenvector of a nonnegative primitive matrix, 1-norm 1.
std::vector<double> power_iterate(const Dense& M, double tol) {
  const std::size_t n = M.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double best = INFINITY;
  std::size_t since_best = 0;
  for (std::size_t it = 0; it < kPerronIterationCap; ++it) {
    std::vector<double> y = multiply(M, x);
    const double mu = sum(y);
    for (double& v : y) v /= mu;
    x.swap(y);
    const double r = relative_residual(M, x, sum(multiply(M, x)));
    if (r < tol / 4) break;
    if (r < best * 0.999) {
      best = r;
      since_best = 0;
    } else if (++since_best > 5000) {
      break;  // at the rounding floor
    }
  }
  return x;
}

MarkovShiftSpec require_irreducible(const IntMatrix& A, const char* what) {
  MarkovShiftSpec s = analyze(A);
  if (!s.irreducible) throw std::invalid_argument(std::string(what) + ": matrix is not irreducible");
  return s;
}

MarkovShiftSpec require_aperiodic(const IntMatrix& A, const char* what) {
  MarkovShiftSpec s = analyze(A);
  if (!s.aperiodic) throw std::invalid_argument(std::string(what) + ": matrix is not aperiodic");
  return s;
}

}  // namespace

PerronData perron(const IntMatrix& A, double tol) {
  const MarkovShiftSpec spec = require_irreducible(A, "perron");
  const std::size_t n = A.rows();
  const Dense D = to_dense(A);
  Dense M = D;
  if (!spec.aperiodic)
    for (std::size_t i = 0; i < n; ++i) M[i][i] += 1.0;

  PerronData pd;
  pd.tol = tol;
  pd.a = power_iterate(M, tol);
  pd.b = power_iterate(transpose(M), tol);

  const std::vector<double> Aa = multiply(D, pd.a);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += pd.b[i] * Aa[i];
    den += pd.b[i] * pd.a[i];
  }
  pd.beta = num / den;

  const double scale = std::sqrt(den);
  for (double& v : pd.a) v /= scale;
  for (double& v : pd.b) v /= scale;

  pd.residual = std::max(relative_residual(D, pd.a, pd.beta), relative_residual(transpose(D), pd.b, pd.beta));
  if (!(pd.residual < tol))
    throw std::runtime_error("perron: residual " + std::to_string(pd.residual) + " above tolerance");
  for (std::size_t i = 0; i < n; ++i)
    if (!(pd.a[i] > 0 && pd.b[i] > 0)) throw std::runtime_error("perron: eigenvector not strictly positive");
  return pd;
}

double entropy(const IntMatrix& A) { return std::log(perron(A).beta); }

CylinderMeasure parry_cylinder(const IntMatrix& A, const PerronData& pd, const Word& w) {
  if (!A.is_01()) throw std::invalid_argument("parry_cylinder: matrix is not 0-1");
  if (w.empty()) throw std::invalid_argument("parry_cylinder: empty word");
  for (std::size_t s : w)
    if (s >= A.rows()) throw std::out_of_range("parry_cylinder: symbol " + std::to_string(s + 1) + " out of range");
  if (!is_admissible(A, w)) return {0.0, false};
  const double value =
      pd.b[w.front()] * pd.a[w.back()] * std::pow(pd.beta, -static_cast<double>(w.size() - 1));
  return {value, true};
}

CylinderMeasure parry_cylinder(const IntMatrix& A, const Word& w) {
  if (!A.is_01()) throw std::invalid_argument("parry_cylinder: matrix is not 0-1");
  return parry_cylinder(A, perron(A), w);
}

ParryReport parry_consistency(const IntMatrix& A, std::size_t L, double tol) {
  if (L < 1) throw std::invalid_argument("parry_consistency: L must be at least 1");
  if (!A.is_01()) throw std::invalid_argument("parry_consistency: matrix is not 0-1");
  const PerronData pd = perron(A);
  const std::size_t N = A.rows();
  ParryReport r;
  r.length = L;
  r.tol = tol;
  const std::vector<Word> ws = words(A, L);
  r.word_count = ws.size();
  for (const Word& w : ws) {
    const double mu = parry_cylinder(A, pd, w).value;
    r.total += mu;
    double right = 0, left = 0;
    Word wj = w, iw(1);
    wj.push_back(0);
    iw.insert(iw.end(), w.begin(), w.end());
    for (std::size_t s = 0; s < N; ++s) {
      wj.back() = s;
      iw.front() = s;
      right += A(w.back(), s).get_d() * parry_cylinder(A, pd, wj).value;
      left += A(s, w.front()).get_d() * parry_cylinder(A, pd, iw).value;
    }
    r.right_error = std::max(r.right_error, std::fabs(mu - right));
    r.left_error = std::max(r.left_error, std::fabs(mu - left));
  }
  r.total_error = std::fabs(r.total - 1.0);
  return r;
}

KmsTable kms_values(const IntMatrix& A, std::size_t n, const PerronData& pd) {
  require_aperiodic(A, "kms_values");
  const std::size_t N = A.rows();
  KmsTable t;
  t.n = n;
  t.perron = pd;
  const double scale = std::pow(pd.beta, -static_cast<double>(n + 1));
  t.p.assign(N, std::vector<double>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t.p[i][j] = pd.b[i] * pd.a[j] * scale;
  return t;
}

KmsTable kms_values(const IntMatrix& A, std::size_t n) {
  require_aperiodic(A, "kms_values");
  return kms_values(A, n, perron(A));
}

double KmsReport::max_error() const {
  double m = 0;
  for (const auto& c : checks) m = std::max(m, c.error);
  return m;
}

std::vector<KmsCheck> KmsReport::failures() const {
  std::vector<KmsCheck> out;
  for (const auto& c : checks)
    if (!(c.error <= tol)) out.push_back(c);
  return out;
}

KmsReport kms_verify(const IntMatrix& A, std::size_t n_max, double tol, const std::optional<PerronData>& override_data) {
  const MarkovShiftSpec spec = require_aperiodic(A, "kms_verify");
  KmsReport rep;
  rep.n0 = *spec.n0;
  rep.n_max = n_max;
  rep.tol = tol;
  if (n_max < rep.n0)
    throw std::invalid_argument("kms_verify: n_max " + std::to_string(n_max) + " is below n0 = " + std::to_string(rep.n0));
  rep.symmetric = A == A.transpose();
  const PerronData pd = override_data ? *override_data : perron(A);
  const std::size_t N = A.rows();
  const Dense D = to_dense(A);

  IntMatrix power_exact = power(A, rep.n0 + 1);
  for (std::size_t n = rep.n0; n <= n_max; ++n, power_exact = power_exact * A) {
    const Dense An1 = to_dense(power_exact);
    const auto pn = kms_values(A, n, pd).p;
    const auto pn1 = kms_values(A, n + 1, pd).p;
    double scale = 0;
    for (const auto& row : pn)
      for (double v : row) scale = std::max(scale, std::fabs(v));

    double scaling = 0, right_next = 0, left_next = 0, right_same = 0, left_same = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        double rn = 0, ln = 0, rs = 0, ls = 0;
        for (std::size_t k = 0; k < N; ++k) {
          rn += D[j][k] * pn1[i][k];
          ln += D[k][i] * pn1[k][j];
          rs += D[j][k] * pn[i][k];
          ls += D[k][i] * pn[k][j];
        }
        scaling = std::max(scaling, std::fabs(pn[i][j] - pd.beta * pn1[i][j]));
        right_next = std::max(right_next, std::fabs(pn[i][j] - rn));
        left_next = std::max(left_next, std::fabs(pn[i][j] - ln));
        right_same = std::max(right_same, std::fabs(pd.beta * pn[i][j] - rs));
        left_same = std::max(left_same, std::fabs(pd.beta * pn[i][j] - ls));
      }
    rep.checks.push_back({"p_n = beta p_{n+1}", n, scaling / scale});
    rep.checks.push_back({"p_n(i,j) = sum_k A(j,k) p_{n+1}(i,k)", n, right_next / scale});
    rep.checks.push_back({"p_n(i,j) = sum_h A(h,i) p_{n+1}(h,j)", n, left_next / scale});
    rep.checks.push_back({"beta p_n(i,j) = sum_k A(j,k) p_n(i,k)", n, right_same / (pd.beta * scale)});
    rep.checks.push_back({"beta p_n(i,j) = sum_h A(h,i) p_n(h,j)", n, left_same / (pd.beta * scale)});

    double total = 0, transposed = 0, rows = 0, cols = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double row = 0, col = 0;
      for (std::size_t j = 0; j < N; ++j) {
        row += An1[i][j] * pn[i][j];
        col += An1[j][i] * pn[j][i];
        total += An1[i][j] * pn[i][j];
        transposed += An1[j][i] * pn[i][j];
      }
      rows = std::max(rows, std::fabs(row - pd.a[i] * pd.b[i]));
      cols = std::max(cols, std::fabs(col - pd.a[i] * pd.b[i]));
    }
    rep.checks.push_back({"sum_j A^{n+1}(i,j) p_n(i,j) = a_i b_i", n, rows});
    rep.checks.push_back({"sum_i A^{n+1}(i,j) p_n(i,j) = a_j b_j", n, cols});
    rep.checks.push_back({"sum_{i,j} A^{n+1}(i,j) p_n(i,j) = 1", n, std::fabs(total - 1.0)});
    if (rep.symmetric)
      rep.checks.push_back({"sum_{i,j} A^{n+1}(j,i) p_n(i,j) = 1", n, std::fabs(transposed - 1.0)});
  }
  return rep;
}

double kms_temperature(const IntMatrix& A) {
  const MarkovShiftSpec spec = analyze(A);
  if (spec.is_permutation) throw std::invalid_argument("kms_temperature: permutation matrices are excluded");
  if (!spec.aperiodic) throw std::invalid_argument("kms_temperature: matrix is not aperiodic");
  return std::log(perron(A).beta);
}

}  // namespace shiftlab
