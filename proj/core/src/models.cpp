// Copyright 2026 The langassess Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "langassess/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "langassess/error.hpp"

namespace langassess::ml {
namespace {

double softplus(double a) { return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Matrix with_bias(const Matrix& x) {
  Matrix xb(x.rows(), x.cols() + 1);
  xb.leftCols(x.cols()) = x;
  xb.col(x.cols()).setOnes();
  return xb;
}

}  // namespace

Standardizer Standardizer::fit(const Matrix& x) {
  Standardizer s;
  const double n = static_cast<double>(std::max<Eigen::Index>(x.rows(), 1));
  s.mean = x.colwise().sum().transpose() / n;
  s.scale = Vector::Ones(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var = (x.col(c).array() - s.mean[c]).square().sum() / n;
    if (var > 0.0) s.scale[c] = std::sqrt(var);
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) throw Error(Errc::DimensionMismatch, "column count differs from fit");
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    out.row(r) = (x.row(r) - mean.transpose()).cwiseQuotient(scale.transpose());
  }
  return out;
}

Labels KnnModel::predict(const Matrix& q) const {
  const auto n = static_cast<std::size_t>(x.rows());
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), n);
  Labels out(static_cast<std::size_t>(q.rows()), 0);
  std::vector<std::pair<double, std::size_t>> d(n);
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = {(x.row(static_cast<Eigen::Index>(i)) - q.row(r)).squaredNorm(), i};
    }
    std::partial_sort(d.begin(), d.begin() + static_cast<long>(kk), d.end());
    std::size_t v1 = 0;
    for (std::size_t i = 0; i < kk; ++i) v1 += y[d[i].second] == 1 ? 1 : 0;
    out[static_cast<std::size_t>(r)] = 2 * v1 > kk ? 1 : 0;
  }
  return out;
}

LdaModel LdaModel::fit(const Matrix& x, const Labels& y, double ridge) {
  const Eigen::Index p = x.cols();
  Vector mu[2] = {Vector::Zero(p), Vector::Zero(p)};
  double n[2] = {0.0, 0.0};
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const int c = y[static_cast<std::size_t>(r)];
    mu[c] += x.row(r).transpose();
    n[c] += 1.0;
  }
  if (n[0] == 0.0 || n[1] == 0.0) throw Error(Errc::SingleClassData, "LDA needs both classes");
  mu[0] /= n[0];
  mu[1] /= n[1];
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const Vector d = x.row(r).transpose() - mu[y[static_cast<std::size_t>(r)]];
    s += d * d.transpose();
  }
  s /= std::max(1.0, n[0] + n[1] - 2.0);
  s.diagonal().array() += ridge;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success) throw Error(Errc::NumericalFailure, "LDA covariance solve failed");
  LdaModel m;
  m.w = ldlt.solve(mu[1] - mu[0]);
  m.mid = 0.5 * (mu[0] + mu[1]);
  m.b = std::log(n[1] / n[0]);
  return m;
}

double LdaModel::score(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  return w.dot(row.transpose() - mid) + b;
}

Labels LdaModel::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = score(x.row(r)) > 0.0 ? 1 : 0;
  return out;
}

double logistic_loss(const Vector& theta, const Matrix& x, const Labels& y, double c) {
  const Eigen::Index p = x.cols();
  const Vector z = x * theta.head(p) + Vector::Constant(x.rows(), theta[p]);
  double loss = 0.5 * theta.head(p).squaredNorm();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double s = y[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
    loss += c * softplus(-s * z[i]);
  }
  return loss;
}

Vector logistic_gradient(const Vector& theta, const Matrix& x, const Labels& y, double c) {
  const Eigen::Index p = x.cols();
  const Vector z = x * theta.head(p) + Vector::Constant(x.rows(), theta[p]);
  Vector r(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) r[i] = sigmoid(z[i]) - y[static_cast<std::size_t>(i)];
  Vector g(p + 1);
  g.head(p) = theta.head(p) + c * x.transpose() * r;
  g[p] = c * r.sum();
  return g;
}

LogisticModel LogisticModel::fit(const Matrix& x, const Labels& y, double c, double tol, int max_iter) {
  const Eigen::Index p = x.cols();
  const Matrix xb = with_bias(x);
  LogisticModel m;
  m.theta = Vector::Zero(p + 1);
  double loss = logistic_loss(m.theta, x, y, c);
  m.loss_history.push_back(loss);
  Vector g = logistic_gradient(m.theta, x, y, c);
  for (m.iterations = 0; m.iterations < max_iter && g.norm() >= tol; ++m.iterations) {
    const Vector z = xb * m.theta;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p + 1, p + 1);
    h.diagonal().head(p).setOnes();
    Vector wts(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double s = sigmoid(z[i]);
      wts[i] = c * s * (1.0 - s);
    }
    h += xb.transpose() * wts.asDiagonal() * xb;
    h.diagonal().array() += 1e-12;
    Vector step = h.ldlt().solve(-g);
    double slope = g.dot(step);
    if (!step.allFinite() || slope >= 0.0) {
      step = -g;
      slope = -g.squaredNorm();
    }
    double t = 1.0;
    double next = logistic_loss(m.theta + t * step, x, y, c);
    for (int k = 0; k < 60 && !(next <= loss + 1e-4 * t * slope); ++k) {
      t *= 0.5;
      next = logistic_loss(m.theta + t * step, x, y, c);
    }
    if (!(next <= loss)) break;
    m.theta += t * step;
    loss = next;
    m.loss_history.push_back(loss);
    g = logistic_gradient(m.theta, x, y, c);
  }
  m.gradient_norm = g.norm();
  return m;
}

double LogisticModel::decision(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  const Eigen::Index p = theta.size() - 1;
  return row.dot(theta.head(p)) + theta[p];
}

Labels LogisticModel::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = decision(x.row(r)) > 0.0 ? 1 : 0;
  return out;
}

double SvmModel::kernel_value(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                              const Eigen::Ref<const Eigen::RowVectorXd>& b2) const {
  if (kernel == Kernel::Linear) return a.dot(b2);
  return std::exp(-gamma * (a - b2).squaredNorm());
}

namespace {

struct SmoState {
  const Eigen::MatrixXd& q;
  const Vector& y;
  double c;
  Vector alpha;
  Vector g;

  bool up(Eigen::Index t) const { return y[t] > 0 ? alpha[t] < c : alpha[t] > 0.0; }
  bool low(Eigen::Index t) const { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c; }

  // m(alpha) - M(alpha) over the current gradient.
  double gap(Eigen::Index* i_out) const {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < y.size(); ++t) {
      const double v = -y[t] * g[t];
      if (up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (low(t)) gmin = std::min(gmin, v);
    }
    if (i_out) *i_out = i;
    if (i < 0 || gmin == std::numeric_limits<double>::infinity()) return 0.0;
    return gmax - gmin;
  }
};

}  // namespace

SvmModel SvmModel::fit(const Matrix& x, const Labels& labels, const SvmParams& params) {
  const Eigen::Index n = x.rows();
  bool has[2] = {false, false};
  for (int l : labels) has[l == 1] = true;
  if (!has[0] || !has[1]) throw Error(Errc::SingleClassData, "SVM needs both classes");

  SvmModel m;
  m.kernel = params.kernel;
  m.c = params.c;
  m.sv = x;
  m.y_signed.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m.y_signed[i] = labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
  m.gamma = params.gamma;
  if (m.kernel == Kernel::Rbf && m.gamma <= 0.0) {
    const double cnt = static_cast<double>(x.size());
    const double mean = x.sum() / cnt;
    const double var = (x.array() - mean).square().sum() / cnt;
    m.gamma = var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
  }

  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = m.y_signed[i] * m.y_signed[j] * m.kernel_value(x.row(i), x.row(j));
      q(i, j) = v;
      q(j, i) = v;
    }
  }

  SmoState st{q, m.y_signed, params.c, Vector::Zero(n), Vector::Constant(n, -1.0)};
  const Vector& y = m.y_signed;
  const double c = params.c;
  constexpr double kTau = 1e-12;
  long it = 0;
  for (; it < params.max_iter; ++it) {
    Eigen::Index i = -1;
    if (st.gap(&i) < params.tol) {
      st.g = q * st.alpha - Vector::Ones(n);
      if (st.gap(&i) < params.tol) break;
    }
    const double gmax = -y[i] * st.g[i];
    Eigen::Index j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      if (!st.low(t)) continue;
      const double b = gmax + y[t] * st.g[t];
      if (b <= 0.0) continue;
      double a = q(i, i) + q(t, t) - 2.0 * y[i] * y[t] * q(i, t);
      if (a <= 0.0) a = kTau;
      const double obj = -b * b / a;
      if (obj < best) {
        best = obj;
        j = t;
      }
    }
    if (j < 0) break;

    const double old_ai = st.alpha[i];
    const double old_aj = st.alpha[j];
    double& ai = st.alpha[i];
    double& aj = st.alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-st.g[i] - st.g[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) { aj = 0.0; ai = diff; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = -diff; }
      }
      if (diff > 0.0) {
        if (ai > c) { ai = c; aj = c - diff; }
      } else {
        if (aj > c) { aj = c; ai = c + diff; }
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (st.g[i] - st.g[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c) {
        if (ai > c) { ai = c; aj = sum - c; }
      } else {
        if (aj < 0.0) { aj = 0.0; ai = sum; }
      }
      if (sum > c) {
        if (aj > c) { aj = c; ai = sum - c; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = sum; }
      }
    }
    const double dai = ai - old_ai;
    const double daj = aj - old_aj;
    st.g += q.col(i) * dai + q.col(j) * daj;
  }
  m.iterations = it;
  m.hit_iteration_cap = it >= params.max_iter;
  m.alpha = st.alpha;

  // Intercept from free vectors, otherwise the midpoint of the feasible range.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * st.g[t];
    const bool at_upper = st.alpha[t] >= c;
    const bool at_lower = st.alpha[t] <= 0.0;
    if (at_upper) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
  m.b = -rho;
  return m;
}

double SvmModel::decision(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  double f = b;
  for (Eigen::Index i = 0; i < sv.rows(); ++i) {
    if (alpha[i] != 0.0) f += alpha[i] * y_signed[i] * kernel_value(sv.row(i), row);
  }
  return f;
}

Labels SvmModel::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = decision(x.row(r)) > 0.0 ? 1 : 0;
  return out;
}

namespace {
Eigen::MatrixXd q_matrix(const SvmModel& m) {
  const Eigen::Index n = m.sv.rows();
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      q(i, j) = m.y_signed[i] * m.y_signed[j] * m.kernel_value(m.sv.row(i), m.sv.row(j));
    }
  }
  return q;
}
}  // namespace

double SvmModel::dual_objective() const {
  const Eigen::MatrixXd q = q_matrix(*this);
  return 0.5 * alpha.dot(q * alpha) - alpha.sum();
}

double SvmModel::kkt_violation() const {
  const Eigen::MatrixXd q = q_matrix(*this);
  SmoState st{q, y_signed, c, alpha, q * alpha - Vector::Ones(alpha.size())};
  double v = std::max(0.0, st.gap(nullptr));
  v = std::max(v, std::abs(alpha.dot(y_signed)));
  for (Eigen::Index t = 0; t < alpha.size(); ++t) {
    v = std::max({v, -alpha[t], alpha[t] - c});
  }
  return v;
}

}  // namespace langassess::ml
