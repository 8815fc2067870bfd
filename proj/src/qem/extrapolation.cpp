// Copyright 2026 The nisqlab Authors
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

#include "nisq/qem/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nisq {

namespace {

double weighted_error(const RVector& w, const std::vector<double>& se) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) v += w(i) * w(i) * se[static_cast<std::size_t>(i)] * se[static_cast<std::size_t>(i)];
  return std::sqrt(v);
}

void check_points(const std::vector<DataPoint>& points, const char* where) {
  for (const auto& p : points)
    if (!std::isfinite(p.rate) || !std::isfinite(p.value) || !(p.std_error >= 0.0))
      throw std::invalid_argument(std::string(where) + ": non-finite input or negative standard error");
}

}  // namespace

RVector richardson_coefficients(const std::vector<double>& alphas) {
  const auto n = static_cast<Eigen::Index>(alphas.size());
  if (n == 0) throw std::invalid_argument("richardson: no points");
  RVector beta(n);
  // Extended precision keeps each beta within one rounding of the exact
  // product; the moment constraints then hold to the double floor.
  for (Eigen::Index k = 0; k < n; ++k) {
    long double b = 1.0L;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      const long double ai = alphas[static_cast<std::size_t>(i)];
      const long double d = ai - static_cast<long double>(alphas[static_cast<std::size_t>(k)]);
      if (d == 0.0L) throw std::invalid_argument("richardson: duplicate boost factor");
      b *= ai / d;
    }
    beta(k) = static_cast<double>(b);
  }
  return beta;
}

MitigatedEstimate richardson(const std::vector<DataPoint>& points) {
  check_points(points, "richardson");
  if (points.empty()) throw std::invalid_argument("richardson: no points");
  if (std::abs(points[0].rate - 1.0) > 1e-12) throw std::invalid_argument("richardson: the first boost factor must be 1");
  std::vector<double> alphas, se;
  MitigatedEstimate e;
  e.method = "richardson";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].rate == points[i - 1].rate) throw std::invalid_argument("richardson: duplicate boost factor");
    if (i > 0 && points[i].rate < points[i - 1].rate)
      throw std::invalid_argument("richardson: boost factors must increase");
    alphas.push_back(points[i].rate);
    se.push_back(points[i].std_error);
    e.rates.push_back(points[i].rate);
    e.inputs.push_back(points[i].value);
  }
  const RVector beta = richardson_coefficients(alphas);
  for (Eigen::Index k = 0; k < beta.size(); ++k) e.value += beta(k) * points[static_cast<std::size_t>(k)].value;
  e.gamma = beta.squaredNorm();
  e.std_error = weighted_error(beta, se);
  return e;
}

MitigatedEstimate exponential_extrapolate(const DataPoint& low, const DataPoint& high, double alpha, double n_gates) {
  check_points({low, high}, "exponential_extrapolate");
  if (!(alpha > 1.0)) throw std::invalid_argument("exponential_extrapolate: alpha must exceed 1");
  if (!(n_gates >= 0.0)) throw std::invalid_argument("exponential_extrapolate: negative gate count");
  const double eps = low.rate;
  if (std::abs(high.rate - alpha * eps) > 1e-12 * std::max(1.0, std::abs(alpha * eps)))
    throw std::invalid_argument("exponential_extrapolate: the second rate must be alpha times the first");
  const double a = alpha * std::exp(n_gates * eps) / (alpha - 1.0);
  const double b = -std::exp(n_gates * alpha * eps) / (alpha - 1.0);
  MitigatedEstimate e;
  e.method = "exponential";
  e.rates = {low.rate, high.rate};
  e.inputs = {low.value, high.value};
  e.value = a * low.value + b * high.value;
  e.gamma = a * a + b * b;
  e.std_error = std::sqrt(a * a * low.std_error * low.std_error + b * b * high.std_error * high.std_error);
  return e;
}

namespace {

struct Projection {
  RVector b;
  RVector weights;  // d(sum b)/dy
  double cost = 0.0;
  RVector residual;
};

Projection project(const RVector& x, const RVector& y, const RVector& decay) {
  RMatrix e(x.size(), decay.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < decay.size(); ++j) e(i, j) = std::exp(-decay(j) * x(i));
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(e);
  cod.setThreshold(1e-13);
  const RMatrix pinv = cod.pseudoInverse();
  Projection p;
  p.b = pinv * y;
  p.weights = pinv.transpose() * RVector::Ones(decay.size());
  p.residual = y - e * p.b;
  p.cost = p.residual.squaredNorm();
  return p;
}

// Levenberg-Marquardt on the projected residual with a central-difference
// Jacobian.
bool refine(const RVector& x, const RVector& y, RVector& decay, double& cost) {
  double lambda = 1e-3;
  Projection cur = project(x, y, decay);
  const double floor = 1e-30 * std::max(1.0, y.squaredNorm());
  for (int it = 0; it < 500; ++it) {
    if (cur.cost <= floor) {
      cost = cur.cost;
      return true;
    }
    RMatrix jac(x.size(), decay.size());
    for (Eigen::Index j = 0; j < decay.size(); ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(decay(j)));
      RVector p = decay, m = decay;
      p(j) += h;
      m(j) -= h;
      jac.col(j) = (project(x, y, p).residual - project(x, y, m).residual) / (2 * h);
    }
    const RMatrix jtj = jac.transpose() * jac;
    const RVector g = jac.transpose() * cur.residual;
    if (g.norm() <= 1e-15 * std::max(1.0, y.norm())) {
      cost = cur.cost;
      return true;
    }
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      RMatrix a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const RVector step = a.ldlt().solve(-g);
      const RVector next = decay + step;
      Projection cand = project(x, y, next);
      if (std::isfinite(cand.cost) && cand.cost < cur.cost) {
        const double gain = cur.cost - cand.cost;
        decay = next;
        cur = std::move(cand);
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (gain <= 1e-15 * cur.cost || step.norm() <= 1e-13 * std::max(1.0, decay.norm())) {
          cost = cur.cost;
          return true;
        }
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) {
      cost = cur.cost;
      // No descent direction left: a stationary point.
      return true;
    }
  }
  cost = cur.cost;
  return false;
}

}  // namespace

MultiExponentialFit multi_exponential_fit(const std::vector<DataPoint>& points, int exponentials) {
  check_points(points, "multi_exponential_fit");
  if (exponentials < 1) throw std::invalid_argument("multi_exponential_fit: need at least one exponential");
  if (points.size() < 2 * static_cast<std::size_t>(exponentials))
    throw std::invalid_argument("multi_exponential_fit: need at least two points per exponential");
  const auto m = static_cast<Eigen::Index>(points.size());
  RVector x(m), y(m);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    x(i) = points[static_cast<std::size_t>(i)].rate;
    y(i) = points[static_cast<std::size_t>(i)].value;
    scale = std::max(scale, std::abs(x(i)));
  }
  if (scale == 0.0) scale = 1.0;

  // Starting decay rates from a log grid (plus zero), all combinations.
  const std::vector<double> grid = {0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0};
  std::vector<RVector> starts;
  std::vector<int> idx(static_cast<std::size_t>(exponentials), 0);
  for (int i = 0; i < exponentials; ++i) idx[static_cast<std::size_t>(i)] = i;
  const int g = static_cast<int>(grid.size());
  while (true) {
    RVector d(exponentials);
    for (int i = 0; i < exponentials; ++i) d(i) = grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] / scale;
    starts.push_back(d);
    int pos = exponentials - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == g - exponentials + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < exponentials; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  std::sort(starts.begin(), starts.end(),
            [&](const RVector& a, const RVector& b) { return project(x, y, a).cost < project(x, y, b).cost; });
  if (starts.size() > 4) starts.resize(4);

  RVector best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (RVector d : starts) {
    double cost = 0.0;
    const bool ok = refine(x, y, d, cost);
    if (cost < best_cost) {
      best_cost = cost;
      best = d;
      converged = ok;
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(exponentials));
  for (int i = 0; i < exponentials; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return best(a) < best(b); });
  RVector sorted(exponentials);
  for (int i = 0; i < exponentials; ++i) sorted(i) = best(order[static_cast<std::size_t>(i)]);

  const Projection p = project(x, y, sorted);
  MultiExponentialFit out;
  out.decay = sorted;
  out.b = p.b;
  MitigatedEstimate& e = out.estimate;
  e.method = "multi_exponential";
  for (const auto& pt : points) {
    e.rates.push_back(pt.rate);
    e.inputs.push_back(pt.value);
  }
  e.value = p.b.sum();
  e.gamma = p.weights.squaredNorm();
  std::vector<double> se;
  for (const auto& pt : points) se.push_back(pt.std_error);
  e.std_error = weighted_error(p.weights, se);
  e.fit_residual = std::sqrt(p.cost);
  if (!converged || !std::isfinite(e.value)) {
    e.flagged = true;
    e.flag = "multi_exponential_fit: fit did not converge";
  }
  return out;
}

std::vector<std::vector<int>> monomial_exponents(int variables, int order) {
  if (variables < 1 || order < 0) throw std::invalid_argument("monomial_exponents: invalid arguments");
  std::vector<std::vector<int>> out;
  for (int degree = 0; degree <= order; ++degree) {
    // Compositions of degree into the variables, first variable highest.
    std::vector<int> e(static_cast<std::size_t>(variables), 0);
    e[0] = degree;
    while (true) {
      out.push_back(e);
      // Next composition in lexicographically decreasing order.
      int i = variables - 2;
      while (i >= 0 && e[static_cast<std::size_t>(i)] == 0) --i;
      if (i < 0) break;
      --e[static_cast<std::size_t>(i)];
      int rest = 0;
      for (int j = i + 1; j < variables; ++j) rest += e[static_cast<std::size_t>(j)];
      for (int j = i + 1; j < variables; ++j) e[static_cast<std::size_t>(j)] = 0;
      e[static_cast<std::size_t>(i + 1)] = rest + 1;
    }
  }
  return out;
}

LeastSquaresFit least_squares_fit(const std::vector<FitPoint>& points, int order) {
  if (points.empty()) throw std::invalid_argument("least_squares_fit: no points");
  if (order < 0) throw std::invalid_argument("least_squares_fit: negative order");
  const int vars = static_cast<int>(points[0].rates.size());
  if (vars < 1) throw std::invalid_argument("least_squares_fit: points need at least one rate");
  bool identical = true;
  for (const auto& p : points) {
    if (static_cast<int>(p.rates.size()) != vars) throw std::invalid_argument("least_squares_fit: ragged rate vectors");
    if (!std::isfinite(p.value) || !(p.std_error >= 0.0)) throw std::invalid_argument("least_squares_fit: bad point");
    if (p.rates != points[0].rates) identical = false;
  }
  LeastSquaresFit fit;
  fit.order = identical ? 0 : order;
  fit.monomials = monomial_exponents(vars, fit.order);
  const auto m = static_cast<Eigen::Index>(points.size());
  const auto k = static_cast<Eigen::Index>(fit.monomials.size());
  if (m < k) throw std::invalid_argument("least_squares_fit: fewer points than monomials");
  RMatrix e(m, k);
  RVector r(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    r(i) = p.value;
    for (Eigen::Index j = 0; j < k; ++j) {
      double v = 1.0;
      for (int q = 0; q < vars; ++q)
        v *= std::pow(p.rates[static_cast<std::size_t>(q)], fit.monomials[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)]);
      e(i, j) = v;
    }
  }
  Eigen::ColPivHouseholderQR<RMatrix> qr(e);
  qr.setThreshold(1e-12);
  if (qr.rank() < k) throw std::invalid_argument("least_squares_fit: rank-deficient design matrix");
  const RMatrix pinv = qr.solve(RMatrix::Identity(m, m));
  fit.coefficients = pinv * r;
  const RVector w = pinv.row(0).transpose();

  MitigatedEstimate& est = fit.estimate;
  est.method = "least_squares";
  std::vector<double> se;
  for (const auto& p : points) {
    est.rates.push_back(p.rates[0]);
    est.inputs.push_back(p.value);
    se.push_back(p.std_error);
  }
  est.value = w.dot(r);
  est.gamma = w.squaredNorm();
  est.std_error = weighted_error(w, se);
  est.fit_residual = (e * fit.coefficients - r).norm();
  return fit;
}

MitigatedEstimate hyperbolic_extrapolate(double m_even, double m_odd, double mu) {
  if (!std::isfinite(m_even) || !std::isfinite(m_odd) || !(mu >= 0.0))
    throw std::invalid_argument("hyperbolic_extrapolate: invalid input");
  const double c = std::cosh(mu), s = std::sinh(mu);
  const double rad = m_even * m_even * c * c - m_odd * m_odd * s * s;
  MitigatedEstimate e;
  e.method = "hyperbolic";
  e.rates = {mu, mu};
  e.inputs = {m_even, m_odd};
  if (rad <= 0.0) {
    e.value = m_even;
    e.flagged = true;
    e.flag = rad < 0.0 ? "hyperbolic_extrapolate: negative radicand, decay model violated"
                       : "hyperbolic_extrapolate: zero radicand";
    return e;
  }
  e.value = (m_even >= 0.0 ? 1.0 : -1.0) * std::sqrt(rad);
  e.gamma = (m_even * m_even * c * c * c * c + m_odd * m_odd * s * s * s * s) / rad;
  return e;
}

double decay_model_even(double m0, double gamma_d, double mu) {
  return std::cosh((1.0 - gamma_d) * mu) / std::cosh(mu) * m0;
}

double decay_model_odd(double m0, double gamma_d, double mu) {
  if (mu == 0.0) return (1.0 - gamma_d) * m0;
  return std::sinh((1.0 - gamma_d) * mu) / std::sinh(mu) * m0;
}

}  // namespace nisq
