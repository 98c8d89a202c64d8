#include "gcis/gauss_space.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gcis/errors.hpp"

namespace gcis {

Complex CoefficientVector::at(std::int64_t n) const {
  const std::int64_t i = n - n_lo;
  if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return {};
  return values[static_cast<std::size_t>(i)];
}

double CoefficientVector::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(s);
}

bool CoefficientVector::is_real() const {
  return std::all_of(values.begin(), values.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

void CoefficientVector::validate() const {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::BadParameter, "coefficient vector has non-finite entries");
    }
  }
}

Complex gaussian_atom(const GaussianParam& c, double t) {
  const double t2 = t * t;
  return std::polar(std::exp(-c.a() * t2), -c.b() * t2);
}

double gaussian_tail_sq(double a, double radius) {
  if (radius <= 0.0) return std::numeric_limits<double>::infinity();
  // Distances beyond R are at least R, R+1, ... on each side, and
  // (R + k)² ≥ R² + 2Rk.
  return 2.0 * std::exp(-2.0 * a * radius * radius) / (-std::expm1(-4.0 * a * radius));
}

Evaluation evaluate(const GaussianParam& c, const CoefficientVector& coeffs, double x, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");
  Evaluation out;
  if (coeffs.empty()) return out;
  double radius = std::sqrt(std::log(2.0 / (tol * tol)) / (2.0 * c.a()));
  while (std::sqrt(gaussian_tail_sq(c.a(), radius)) >= tol) radius += 0.5;

  const auto lo = std::max(coeffs.n_lo, static_cast<std::int64_t>(std::ceil(x - radius)));
  const auto hi = std::min(coeffs.range().hi, static_cast<std::int64_t>(std::floor(x + radius)));
  Complex sum{};
  for (std::int64_t n = lo; n <= hi; ++n) {
    sum += coeffs.at(n) * gaussian_atom(c, x - static_cast<double>(n));
  }
  out.value = sum;
  const bool truncated = lo > coeffs.n_lo || hi < coeffs.range().hi;
  out.tail_bound = truncated ? coeffs.norm() * std::sqrt(gaussian_tail_sq(c.a(), radius)) : 0.0;
  return out;
}

int collocation_buffer(double a, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::BadParameter, "tolerance must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::sqrt(2.0 * std::log(1.0 / tol) / a)));
}

CollocationMatrix collocation_matrix_from_nodes(const GaussianParam& c, IndexRange rows, std::vector<double> nodes,
                                                double tol) {
  if (rows.empty() || nodes.size() != rows.size()) {
    throw Error(ErrorCode::BadParameter, "row range and node list disagree");
  }
  CollocationMatrix m;
  m.rows = rows;
  m.buffer = collocation_buffer(c.a(), tol);
  const auto [min_it, max_it] = std::minmax_element(nodes.begin(), nodes.end());
  m.cols = {static_cast<std::int64_t>(std::floor(*min_it)) - m.buffer,
            static_cast<std::int64_t>(std::ceil(*max_it)) + m.buffer};
  m.nodes = std::move(nodes);
  m.entries.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.cols.size()));
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    const double lambda = m.nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      m.entries(i, j) = gaussian_atom(c, lambda - static_cast<double>(m.cols.lo + j));
    }
  }
  // Every excluded column is farther than B from every node.
  m.tail_bound = std::sqrt(gaussian_tail_sq(c.a(), static_cast<double>(m.buffer)));
  return m;
}

CollocationMatrix collocation_matrix(const GaussianParam& c, const NodeSequence& seq, IndexRange node_range,
                                     double tol) {
  const auto e = bounded_enumeration(seq, node_range);
  if (!e || seq.clip(node_range) != node_range) {
    throw Error(ErrorCode::NoEnumeration, "sequence has no bounded enumeration on the requested node range");
  }
  return collocation_matrix_from_nodes(c, node_range, seq.nodes(node_range), tol);
}

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues();
}

}  // namespace

InterpolationResult interpolate(const GaussianParam& c, const NodeSequence& seq, IndexRange node_range,
                                std::span<const Complex> samples, double tol) {
  if (samples.size() != node_range.size()) {
    throw Error(ErrorCode::BadParameter, "sample count does not match node range");
  }
  const auto mat = collocation_matrix(c, seq, node_range, tol);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat.entries, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  InterpolationResult out;
  out.sigma_max = sv(0);
  out.sigma_min = sv(sv.size() - 1);
  if (!(out.sigma_min > kSingularRatio * out.sigma_max)) {
    throw Error(ErrorCode::SingularSystem, "collocation matrix is numerically rank deficient");
  }
  const Eigen::Map<const Eigen::VectorXcd> y(samples.data(), static_cast<Eigen::Index>(samples.size()));
  const Eigen::VectorXcd x = svd.solve(y);
  const double y_norm = y.norm();
  out.residual = y_norm > 0.0 ? (mat.entries * x - y).norm() / y_norm : 0.0;
  out.norm_ratio = y_norm > 0.0 ? x.norm() / y_norm : 0.0;
  out.coeffs.n_lo = mat.cols.lo;
  out.coeffs.values.assign(x.data(), x.data() + x.size());
  return out;
}

double FrameBoundOptions::effective_fraction() const {
  if (interior_fraction > 0.0) return std::min(interior_fraction, 1.0);
  return orientation == Orientation::Frame ? 2.0 / 3.0 : 1.0;
}

FrameBoundReport frame_bounds(const GaussianParam& c, const NodeSequence& seq, std::span<const std::int64_t> sizes,
                              const FrameBoundOptions& options) {
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw Error(ErrorCode::BadParameter, "frame-bound sizes must be strictly increasing");
  }
  FrameBoundReport report;
  report.orientation = options.orientation;
  report.interior_fraction = options.effective_fraction();
  const double frac = report.interior_fraction;
  constexpr double slack = 1e-9;

  for (std::int64_t m_size : sizes) {
    const IndexRange rows = seq.clip({-m_size, m_size});
    if (rows.size() < 2) throw Error(ErrorCode::EmptyWindow, "frame-bound window has fewer than two nodes");
    const auto mat = collocation_matrix_from_nodes(c, rows, seq.nodes(rows), options.tol);

    Eigen::MatrixXcd kept;
    if (options.orientation == Orientation::Riesz) {
      const double centre = 0.5 * static_cast<double>(rows.size() - 1);
      std::vector<Eigen::Index> idx;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::abs(static_cast<double>(i) - centre) <= frac * centre + slack) idx.push_back(static_cast<Eigen::Index>(i));
      }
      kept = mat.entries(idx, Eigen::all);
    } else {
      const double lo = mat.nodes.front();
      const double hi = mat.nodes.back();
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      std::vector<Eigen::Index> idx;
      for (std::size_t j = 0; j < mat.cols.size(); ++j) {
        const double n = static_cast<double>(mat.cols.lo + static_cast<std::int64_t>(j));
        if (std::abs(n - mid) <= frac * half + slack) idx.push_back(static_cast<Eigen::Index>(j));
      }
      if (idx.empty()) throw Error(ErrorCode::EmptyWindow, "interior fraction keeps no coefficients");
      kept = mat.entries(Eigen::all, idx);
    }
    const auto sv = singular_values(kept);
    report.records.push_back({m_size, static_cast<std::size_t>(kept.rows()), static_cast<std::size_t>(kept.cols()),
                              sv(sv.size() - 1), sv(0)});
  }
  for (std::size_t i = 1; i < report.records.size(); ++i) {
    report.trend_ratios.push_back(report.records[i].sigma_min / report.records[i - 1].sigma_min);
  }
  return report;
}

SplitParts split_parts(const CoefficientVector& coeffs) {
  SplitParts parts;
  parts.minus.n_lo = coeffs.n_lo;
  parts.plus.n_lo = 1;
  for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
    const std::int64_t n = coeffs.n_lo + static_cast<std::int64_t>(i);
    if (n < 0) {
      parts.minus.values.push_back(coeffs.values[i]);
    } else if (n == 0) {
      parts.c0 = coeffs.values[i];
    } else {
      if (parts.plus.values.empty()) parts.plus.n_lo = n;
      parts.plus.values.push_back(coeffs.values[i]);
    }
  }
  if (parts.minus.values.empty()) parts.minus.n_lo = -1;
  return parts;
}

CoefficientVector join_parts(const SplitParts& parts) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  if (!parts.minus.empty()) lo = parts.minus.n_lo;
  if (!parts.plus.empty()) hi = parts.plus.range().hi;
  CoefficientVector out = CoefficientVector::zeros({lo, hi});
  auto put = [&](const CoefficientVector& v) {
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      out.values[static_cast<std::size_t>(v.n_lo + static_cast<std::int64_t>(i) - lo)] = v.values[i];
    }
  };
  put(parts.minus);
  out.values[static_cast<std::size_t>(-lo)] = parts.c0;
  put(parts.plus);
  return out;
}

HsNorm compact_block_hsnorm(const GaussianParam& c, const NodeSequence& seq, int window) {
  if (window < 1) throw Error(ErrorCode::BadParameter, "HS window must be >= 1");
  const auto e = bounded_enumeration(seq);
  if (!e) throw Error(ErrorCode::NoEnumeration, "HS block needs a bounded enumeration");
  const std::int64_t k = e->offset;
  // Canonical index m corresponds to original index m - k.
  const IndexRange needed{-window - k, -1 - k};
  if (seq.clip(needed) != needed) {
    throw Error(ErrorCode::BadParameter, "explicit window does not cover the HS block rows");
  }
  double sup_delta = 0.0;
  double sum = 0.0;
  for (std::int64_t m = -window; m <= -1; ++m) {
    const double lambda = seq.node(m - k);
    sup_delta = std::max(sup_delta, std::abs(lambda - static_cast<double>(m)));
    for (std::int64_t n = 1; n <= window; ++n) {
      const double t = lambda - static_cast<double>(n);
      sum += std::exp(-2.0 * c.a() * t * t);
    }
  }
  sup_delta = std::max(sup_delta, e->sup_abs());
  // Pairs outside the box have s = |m| + n ≥ W + 2; at most s − 1 pairs share s.
  double tail = 0.0;
  for (std::int64_t s = window + 2;; ++s) {
    const double d = std::max(0.0, static_cast<double>(s) - sup_delta);
    const double term = static_cast<double>(s - 1) * std::exp(-2.0 * c.a() * d * d);
    tail += term;
    if (d > 0.0 && term < 1e-300 + 1e-18 * tail) break;
  }
  return {std::sqrt(sum), tail};
}

std::string to_string(Orientation o) { return o == Orientation::Frame ? "frame" : "riesz"; }

}  // namespace gcis
