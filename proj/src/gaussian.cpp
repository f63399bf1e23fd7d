#include "gausslink/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "gausslink/error.hpp"

namespace gausslink {

namespace {

Mat4 symmetrized(const Mat4& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Mat4 symplectic_form() {
  Mat4 om = Mat4::Zero();
  om(0, 1) = 1.0;
  om(1, 0) = -1.0;
  om(2, 3) = 1.0;
  om(3, 2) = -1.0;
  return om;
}

Mat2 pauli_z() {
  Mat2 z;
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

Squeezing::Squeezing(double r) : r_(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::InvalidArgument,
                "squeezing parameter must be finite and >= 0, got " + std::to_string(r));
  }
}

Squeezing Squeezing::from_db(double db) {
  // db = 10 log10(e^{2r})  =>  r = db ln(10) / 20
  return Squeezing(db * std::log(10.0) / 20.0);
}

double Squeezing::db() const noexcept { return 20.0 * r_ / std::log(10.0); }

CovMat2::CovMat2(const Mat4& m) : m_(m) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "covariance matrix has non-finite entries");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    throw Error(ErrorKind::InvalidArgument,
                "covariance matrix is not symmetric (|m - m^T| = " + std::to_string(asym) + ")");
  }
}

CovMat2 CovMat2::vacuum() { return CovMat2(kVacuumVariance * Mat4::Identity()); }

BalancedForm::BalancedForm(double a, double b, double c)
    : a_(a), b_(b), c_(c), x_(a - 0.5), y_(b - 0.5), k_((a - 0.5) * (b - 0.5) - c * c) {}

BalancedForm BalancedForm::from_excess(double x, double y, double c, double margin) {
  BalancedForm s;
  s.a_ = 0.5 + x;
  s.b_ = 0.5 + y;
  s.c_ = c;
  s.x_ = x;
  s.y_ = y;
  s.k_ = margin;
  return s;
}

CovMat2 BalancedForm::to_covariance() const {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = a_ * Mat2::Identity();
  m.block<2, 2>(2, 2) = b_ * Mat2::Identity();
  m.block<2, 2>(0, 2) = c_ * pauli_z();
  m.block<2, 2>(2, 0) = c_ * pauli_z();
  return CovMat2(m);
}

BalancedForm BalancedForm::from_covariance(const CovMat2& v, double tol) {
  const Mat4& m = v.matrix();
  const double a = m(0, 0);
  const double b = m(2, 2);
  const double c = m(0, 2);
  Mat4 expected = Mat4::Zero();
  expected.block<2, 2>(0, 0) = a * Mat2::Identity();
  expected.block<2, 2>(2, 2) = b * Mat2::Identity();
  expected.block<2, 2>(0, 2) = c * pauli_z();
  expected.block<2, 2>(2, 0) = c * pauli_z();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - expected).cwiseAbs().maxCoeff();
  if (dev > tol * scale) {
    throw Error(ErrorKind::InvalidArgument,
                "covariance matrix is not balanced-correlated (deviation " +
                    std::to_string(dev) + ")");
  }
  return BalancedForm(a, b, c);
}

BalancedForm BalancedForm::exchanged() const {
  BalancedForm s = *this;
  std::swap(s.a_, s.b_);
  std::swap(s.x_, s.y_);
  return s;
}

bool OneModeChannel::is_isotropic(double tol) const {
  return std::abs(T(0, 1)) <= tol && std::abs(T(1, 0)) <= tol &&
         std::abs(T(0, 0) - T(1, 1)) <= tol && std::abs(N(0, 1)) <= tol &&
         std::abs(N(1, 0)) <= tol && std::abs(N(0, 0) - N(1, 1)) <= tol;
}

OneModeChannel OneModeChannel::isotropic(double gain, double noise) {
  return {gain * Mat2::Identity(), noise * Mat2::Identity()};
}

CovMat2 make_tms(Squeezing r) { return tms_balanced(r).to_covariance(); }

BalancedForm tms_balanced(Squeezing r) {
  const double sh = std::sinh(2.0 * r.r());
  const double excess = std::sinh(r.r()) * std::sinh(r.r());
  // Pure state: x = y = sinh^2 r and x y - c^2 = -sinh^2 r.
  return BalancedForm::from_excess(excess, excess, 0.5 * sh, -excess);
}

CovMat2 apply_two_mode(const TwoModeChannel& ch, const CovMat2& v) {
  const Mat4 out = ch.T * v.matrix() * ch.T.transpose() + ch.N;
  return CovMat2(symmetrized(out));
}

CovMat2 apply_one_mode(const OneModeChannel& ch, const CovMat2& v, Mode mode) {
  TwoModeChannel full{Mat4::Identity(), Mat4::Zero()};
  const int k = mode == Mode::First ? 0 : 2;
  full.T.block<2, 2>(k, k) = ch.T;
  full.N.block<2, 2>(k, k) = ch.N;
  return apply_two_mode(full, v);
}

BalancedForm apply_isotropic_excess(const BalancedForm& s, double gain, double added,
                                    Mode mode) noexcept {
  const double g2 = gain * gain;
  if (mode == Mode::First) {
    return BalancedForm::from_excess(g2 * s.excess_a() + added, s.excess_b(), gain * s.c(),
                                     g2 * s.margin() + added * s.excess_b());
  }
  return BalancedForm::from_excess(s.excess_a(), g2 * s.excess_b() + added, gain * s.c(),
                                   g2 * s.margin() + added * s.excess_a());
}

BalancedForm apply_isotropic(const BalancedForm& s, double gain, double noise,
                             Mode mode) noexcept {
  return apply_isotropic_excess(s, gain, 0.5 * gain * gain + noise - 0.5, mode);
}

BalancedForm apply_one_mode(const OneModeChannel& ch, const BalancedForm& s,
                            Mode mode) {
  if (!ch.is_isotropic(1e-15 * std::max(1.0, ch.T.cwiseAbs().maxCoeff() +
                                                   ch.N.cwiseAbs().maxCoeff()))) {
    throw Error(ErrorKind::InvalidArgument,
                "balanced-form channel application needs T = t I2 and N = n I2");
  }
  return apply_isotropic(s, ch.gain(), ch.noise(), mode);
}

TwoModeChannel compose(const TwoModeChannel& first, const TwoModeChannel& second) {
  TwoModeChannel out;
  out.T = second.T * first.T;
  out.N = second.T * first.N * second.T.transpose() + second.N;
  out.N = symmetrized(out.N);
  return out;
}

OneModeChannel loss_channel(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "transmissivity must lie in [0, 1], got " + std::to_string(tau));
  }
  return OneModeChannel::isotropic(std::sqrt(tau), 0.5 * (1.0 - tau));
}

double nu_offset(const BalancedForm& s) noexcept {
  const double k = s.margin();
  if (k == 0.0) return 0.0;
  const double diff = s.excess_a() - s.excess_b();
  const double root = std::sqrt(diff * diff + 4.0 * s.c() * s.c());
  const double excess = s.excess_a() + s.excess_b() + root;
  return 2.0 * k * (1.0 + 1.0 / excess) / (1.0 + excess);
}

double min_sympl_eig_pt(const BalancedForm& s) noexcept {
  return kVacuumVariance + nu_offset(s);
}

double min_sympl_eig_pt(const CovMat2& v) {
  const Mat4& m = v.matrix();
  const double det_a = m.block<2, 2>(0, 0).determinant();
  const double det_b = m.block<2, 2>(2, 2).determinant();
  const double det_c = m.block<2, 2>(0, 2).determinant();
  // Partial transposition flips the sign of det C.
  const double delta = det_a + det_b - 2.0 * det_c;
  const double det_v = m.determinant();
  const double disc = std::max(0.0, delta * delta - 4.0 * det_v);
  return std::sqrt(std::max(0.0, 0.5 * (delta - std::sqrt(disc))));
}

double log_negativity_from_nu(double nu) noexcept {
  return log_negativity_from_offset(nu - kVacuumVariance);
}

double log_negativity_from_offset(double offset) noexcept {
  if (!(offset < 0.0)) return 0.0;
  if (offset <= -kVacuumVariance) return std::numeric_limits<double>::infinity();
  return -std::log1p(2.0 * offset) / std::numbers::ln2;
}

double log_negativity(const BalancedForm& s) noexcept {
  return log_negativity_from_offset(nu_offset(s));
}

bool physicality_check(const CovMat2& v) {
  using Mat4c = Eigen::Matrix<std::complex<double>, 4, 4>;
  const Mat4c h = v.matrix().cast<std::complex<double>>() +
                  std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Mat4c> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -kPhysicalityTol;
}

}  // namespace gausslink
