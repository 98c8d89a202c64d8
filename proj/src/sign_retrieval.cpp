#include "gcis/sign_retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcis/errors.hpp"

namespace gcis {

DilatedModel dilate_half_step(const GaussianParam& c, const CoefficientVector& coeffs, const NodeSequence& seq,
                              IndexRange window) {
  if (window.empty()) throw Error(ErrorCode::BadParameter, "empty window");
  if (seq.clip(window) != window) throw Error(ErrorCode::BadParameter, "window not covered by the sequence");
  std::vector<double> y = seq.nodes(window);
  for (double& v : y) v *= 2.0;

  CoefficientVector dilated;
  if (!coeffs.empty()) {
    dilated = CoefficientVector::zeros({2 * coeffs.range().lo, 2 * coeffs.range().hi});
    for (std::int64_t n = coeffs.range().lo; n <= coeffs.range().hi; ++n) {
      dilated.values[static_cast<std::size_t>(2 * (n - coeffs.range().lo))] = coeffs.at(n);
    }
  }
  return {GaussianParam(c.a() / 4.0, c.b() / 4.0), std::move(dilated), NodeSequence::explicit_window(window.lo, y)};
}

SignRetrievalResult sign_retrieval_check(const GaussianParam& c, const CoefficientVector& coeffs,
                                         const NodeSequence& seq, IndexRange window) {
  if (window.size() > kMaxSignWindow) {
    throw Error(ErrorCode::WindowTooLarge, "sign window of " + std::to_string(window.size()) + " exceeds 16");
  }
  if (!c.is_real() || !coeffs.is_real()) throw Error(ErrorCode::ComplexInput, "sign retrieval needs real data");
  coeffs.validate();
  if (coeffs.empty()) throw Error(ErrorCode::BadParameter, "coefficient support is empty");
  if (window.size() < coeffs.values.size()) {
    throw Error(ErrorCode::BadParameter, "window has fewer nodes than unknown coefficients");
  }

  const auto model = dilate_half_step(c, coeffs, seq, window);
  SignRetrievalResult out;
  out.dilated_verdict = avdonin_verdict(model.nodes);
  out.precondition_met = out.dilated_verdict.passes;

  const auto w = static_cast<Eigen::Index>(window.size());
  const auto k = static_cast<Eigen::Index>(coeffs.values.size());
  const auto y = model.nodes.nodes(window);
  const double quarter_a = model.c.a();

  // Columns are the even dilated indices 2n carrying the original unknowns.
  Eigen::MatrixXd a(w, k);
  for (Eigen::Index i = 0; i < w; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double d = y[static_cast<std::size_t>(i)] - 2.0 * static_cast<double>(coeffs.n_lo + j);
      a(i, j) = std::exp(-quarter_a * d * d);
    }
  }
  Eigen::VectorXd s(w);
  for (Eigen::Index i = 0; i < w; ++i) {
    s(i) = std::abs(evaluate(c, coeffs, seq.node(window.lo + i)).value);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(k - 1) > kSingularRatio * sv(0))) throw Error(ErrorCode::SingularSystem, "sign design matrix is rank deficient");
  const Eigen::MatrixXd pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  const Eigen::MatrixXd projector = Eigen::MatrixXd::Identity(w, w) - a * pinv;

  Eigen::VectorXd truth(k);
  for (Eigen::Index j = 0; j < k; ++j) truth(j) = coeffs.values[static_cast<std::size_t>(j)].real();
  const double scale = truth.norm();
  const double s_norm = s.norm();
  const double match_tol = kSignResidualCutoff * std::max(scale, std::numeric_limits<double>::min());

  out.min_rejected_residual = std::numeric_limits<double>::infinity();
  out.patterns = std::size_t{1} << window.size();
  bool all_match = true;
  Eigen::VectorXd target(w);
  for (std::size_t pattern = 0; pattern < out.patterns; ++pattern) {
    for (Eigen::Index i = 0; i < w; ++i) target(i) = ((pattern >> i) & 1u) ? -s(i) : s(i);
    const double residual = s_norm > 0.0 ? (projector * target).norm() / s_norm : 0.0;
    if (residual >= kSignResidualCutoff) {
      out.min_rejected_residual = std::min(out.min_rejected_residual, residual);
      continue;
    }
    ++out.survivors;
    const Eigen::VectorXd x = pinv * target;
    if ((x - truth).norm() > match_tol && (x + truth).norm() > match_tol) all_match = false;
    const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const std::vector<double>& v) {
      return (Eigen::Map<const Eigen::VectorXd>(v.data(), k) - x).norm() <= match_tol;
    });
    if (!seen) out.solutions.emplace_back(x.data(), x.data() + k);
  }
  out.passes = out.precondition_met && all_match && out.survivors > 0;
  return out;
}

}  // namespace gcis
