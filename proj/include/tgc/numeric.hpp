#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "constructions.hpp"

namespace tgc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ParityMatrix {
  Matrix h;  // budget x Q
  std::uint64_t seed = 0;
  int budget() const { return static_cast<int>(h.rows()); }
  int q() const { return static_cast<int>(h.cols()); }
};

namespace detail {

// Box-Muller on a 64-bit Mersenne twister; portable across standard libraries.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : eng_(seed) {}
  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

 private:
  double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }
  std::mt19937_64 eng_;
  double spare_ = 0;
  bool have_spare_ = false;
};

inline std::string set_text(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace detail

inline ParityMatrix sample_parity(int q, int budget, std::uint64_t seed) {
  if (q < 1) throw invalid_parameters("Q < 1");
  if (budget < 0 || budget >= q) throw invalid_parameters("parity budget must lie in [0, Q)");
  ParityMatrix out;
  out.seed = seed;
  out.h = Matrix::Zero(budget, q);
  detail::Gaussian g(seed);
  for (int col = 0; col + 1 < q; ++col)
    for (int r = 0; r < budget; ++r) out.h(r, col) = g.next();
  for (int r = 0; r < budget; ++r) out.h(r, q - 1) = -out.h.row(r).head(q - 1).sum();
  return out;
}

// A row supported on L with r|_L * H(:,L)^T = 0, scaled to unit max-abs entry.
inline Eigen::RowVectorXd solve_row(const IndexSet& support, const ParityMatrix& h) {
  const int s = static_cast<int>(support.size());
  if (s == 0) throw rank_deficient("empty support");
  if (s <= h.budget())
    throw rank_deficient("support " + detail::set_text(support) + " has no room beyond the parity budget");
  Vector local;
  if (h.budget() == 0) {
    local = Vector::Ones(s);
  } else {
    Matrix sub(h.budget(), s);
    for (int j = 0; j < s; ++j) sub.col(j) = h.h.col(support[j]);
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = 1e-10 * (sv.size() ? sv(0) : 1.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff;
    if (rank < h.budget())
      throw rank_deficient("parity restriction to " + detail::set_text(support) + " is rank deficient");
    Matrix null = svd.matrixV().rightCols(s - rank);
    local = null * (null.transpose() * Vector::Ones(s));
    if (local.cwiseAbs().maxCoeff() < 1e-8) local = null.col(0);
  }
  Eigen::Index at = 0;
  double peak = local.cwiseAbs().maxCoeff(&at);
  if (peak == 0) throw rank_deficient("zero nullspace vector for " + detail::set_text(support));
  local /= (local(at) < 0 ? -peak : peak);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(h.q());
  for (int j = 0; j < s; ++j) row(support[j]) = local(j);
  return row;
}

inline Matrix instantiate_rows(const SupportMatrix& sm, const std::optional<ParityMatrix>& h) {
  Matrix out = Matrix::Zero(sm.rows(), sm.q());
  for (int r = 0; r < sm.rows(); ++r) {
    auto sup = sm.row_support(r);
    if (h) {
      out.row(r) = solve_row(sup, *h);
    } else {
      for (int col : sup) out(r, col) = 1.0;
    }
  }
  return out;
}

class TieredCode {
 public:
  TieredCode(TieredSupport ts, std::optional<ParityMatrix> h, double tol)
      : support_(std::move(ts)), h_(std::move(h)), tol_(tol) {
    f_ = instantiate_rows(support_.f, h_);
  }

  const TieredSupport& support() const { return support_; }
  const TieredParams& params() const { return support_.params(); }
  const CodePlan& plan() const { return support_.plan; }
  const std::optional<ParityMatrix>& parity() const { return h_; }
  const Matrix& f() const { return f_; }
  double tol() const { return tol_; }
  int q() const { return support_.q(); }

  Matrix b_for(const FinishedSet& m) const { return instantiate_rows(support_.b_for(m), h_); }

  // F stacked over B_M: n2 x Q, server slots in order.
  Matrix stacked(const FinishedSet& m) const {
    Matrix b = b_for(m);
    Matrix all(f_.rows() + b.rows(), q());
    all << f_, b;
    return all;
  }

 private:
  TieredSupport support_;
  std::optional<ParityMatrix> h_;
  double tol_;
  Matrix f_;
};

inline TieredCode instantiate(const TieredSupport& ts, std::uint64_t seed, double tol = 1e-8) {
  if (ts.plan.construction == Construction::fractional) return TieredCode(ts, std::nullopt, tol);
  int load = ts.f.max_row_weight();
  for (int r = 0; r < ts.leftover.rows(); ++r) load = std::max(load, ts.leftover.row_weight(r));
  return TieredCode(ts, sample_parity(ts.q(), load - 1, seed), tol);
}

struct DecoderOutput {
  Vector a;             // over n2 server slots (1-based server s sits at index s-1)
  IndexSet finished;    // 0-based slots used
  double residual = 0;  // max |a * rows - 1|
};

inline std::string tuple_text(const FinishedSet& m, const IndexSet& i1, const IndexSet& i2) {
  return "M=" + detail::set_text(m) + " I1=" + detail::set_text(i1) + " I2=" + detail::set_text(i2);
}

// I1 holds phase-one servers (1-based), I2 phase-two servers (1-based within B_M).
inline DecoderOutput decode_rows(const Matrix& all, int n1, const FinishedSet& m, const IndexSet& i1,
                                 const IndexSet& i2, double tol) {
  DecoderOutput out;
  for (int s : m) out.finished.push_back(s - 1);
  for (int s : i1) out.finished.push_back(s - 1);
  for (int s : i2) out.finished.push_back(n1 + s - 1);
  std::sort(out.finished.begin(), out.finished.end());
  if (std::adjacent_find(out.finished.begin(), out.finished.end()) != out.finished.end())
    throw invalid_parameters("decode: a server is listed twice");
  const int s = static_cast<int>(out.finished.size());
  for (int slot : out.finished)
    if (slot < 0 || slot >= all.rows()) throw invalid_parameters("decode: server outside the code");
  Matrix rt(all.cols(), s);
  for (int j = 0; j < s; ++j) rt.col(j) = all.row(out.finished[j]).transpose();
  Vector ones = Vector::Ones(all.cols());
  Vector coef = rt.completeOrthogonalDecomposition().solve(ones);
  out.residual = (rt * coef - ones).cwiseAbs().maxCoeff();
  out.a = Vector::Zero(all.rows());
  for (int j = 0; j < s; ++j) out.a(out.finished[j]) = coef(j);
  if (!(out.residual <= tol))
    throw span_violation("span violation at " + tuple_text(m, i1, i2) + ", residual " + std::to_string(out.residual),
                         out.residual);
  return out;
}

inline DecoderOutput decode(const TieredCode& code, const FinishedSet& m, const IndexSet& i1, const IndexSet& i2) {
  const auto& p = code.params();
  auto mm = normalize_finished(m, p.n1, p.c);
  for (int s : i1)
    if (s < 1 || s > p.n1 || std::find(mm.begin(), mm.end(), s) != mm.end())
      throw invalid_parameters("decode: I1 must be a subset of [n1] \\ M");
  for (int s : i2)
    if (s < 1 || s > p.n2 - p.n1) throw invalid_parameters("decode: I2 must be a subset of [n2 - n1]");
  if (static_cast<int>(i1.size() + i2.size()) < p.k - p.c) throw invalid_parameters("decode: fewer than k - c rows");
  return decode_rows(code.stacked(mm), p.n1, mm, i1, i2, code.tol());
}

// Recovers sum_j g_j from the transmissions of the finished servers.
inline Vector aggregate(const TieredCode& code, const FinishedSet& m, const DecoderOutput& d, const Matrix& partials) {
  if (partials.rows() != code.q())
    throw invalid_parameters("partials have " + std::to_string(partials.rows()) + " rows, expected Q=" +
                             std::to_string(code.q()));
  Matrix all = code.stacked(normalize_finished(m, code.params().n1, code.params().c));
  if (d.a.size() != all.rows()) throw invalid_parameters("decoder output does not match the code");
  Vector out = Vector::Zero(partials.cols());
  for (int slot : d.finished) {
    Vector sent = partials.transpose() * all.row(slot).transpose();
    out += d.a(slot) * sent;
  }
  return out;
}

// ---- matrix text format ----------------------------------------------------

inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      os << (c ? " " : "") << buf;
    }
    os << '\n';
  }
}

inline Matrix read_matrix(std::istream& is) {
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw invalid_parameters("matrix: missing 'rows cols' header");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      if (!(is >> m(r, c))) throw invalid_parameters("matrix: truncated data");
  return m;
}

}  // namespace tgc
