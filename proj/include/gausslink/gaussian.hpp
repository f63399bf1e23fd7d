#pragma once

// Two-mode Gaussian states and channels.
//
// Conventions used throughout the library:
//   * hbar = 1, so the vacuum covariance matrix is I/2;
//   * quadratures are ordered (x1, p1, x2, p2);
//   * all states are zero-mean, so only covariance matrices are tracked.

#include <Eigen/Dense>

namespace gausslink {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-10;

enum class Mode { First = 1, Second = 2 };

/// Standard two-mode symplectic form, block diagonal in ((0,1),(-1,0)).
Mat4 symplectic_form();

/// Z2 = diag(1, -1).
Mat2 pauli_z();

/// Squeezing parameter r >= 0. dB is 10 log10(e^{2r}).
class Squeezing {
 public:
  explicit Squeezing(double r);
  static Squeezing from_db(double db);

  double r() const noexcept { return r_; }
  double db() const noexcept;

 private:
  double r_;
};

/// Covariance matrix of a two-mode Gaussian state. Construction enforces
/// symmetry; physicality is a separate check because intermediate results of
/// some algebraic routes are allowed to be unphysical.
class CovMat2 {
 public:
  explicit CovMat2(const Mat4& m);

  static CovMat2 vacuum();

  const Mat4& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Mat4 m_;
};

/// Balanced-correlated two-mode state: blocks a I2, b I2 on the diagonal and
/// c Z2 off the diagonal.
///
/// Alongside (a, b, c) the form carries the excess variances x = a - 1/2,
/// y = b - 1/2 and the separability margin k = x y - c^2. Near vacuum x, y and
/// c^2 are tiny and k decides entanglement; near a parametric instability they
/// are huge and x y - c^2 cancels completely. Sources give all three in closed
/// form and every operation below propagates them without cancellation, so
/// the sign of k (entangled iff k < 0) is reliable in both regimes.
class BalancedForm {
 public:
  BalancedForm(double a, double b, double c);
  static BalancedForm from_excess(double x, double y, double c, double margin);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double excess_a() const noexcept { return x_; }
  double excess_b() const noexcept { return y_; }
  double margin() const noexcept { return k_; }
  /// ab - c^2.
  double det() const noexcept { return 0.25 + 0.5 * (x_ + y_) + k_; }

  CovMat2 to_covariance() const;

  /// Extracts (a, b, c) from a covariance matrix with balanced structure.
  /// Throws InvalidArgument if the matrix is not of that form within `tol`.
  static BalancedForm from_covariance(const CovMat2& v, double tol = 1e-9);

  /// Relabels mode 1 <-> mode 2.
  BalancedForm exchanged() const;

 private:
  BalancedForm() = default;
  double a_ = 0.5, b_ = 0.5, c_ = 0.0, x_ = 0.0, y_ = 0.0, k_ = 0.0;
};

struct TwoModeChannel {
  Mat4 T;
  Mat4 N;
};

struct OneModeChannel {
  Mat2 T;
  Mat2 N;

  /// Channels with T = t I2 and N = n I2 map balanced forms to balanced forms.
  bool is_isotropic(double tol = 0.0) const;
  double gain() const { return T(0, 0); }
  double noise() const { return N(0, 0); }

  static OneModeChannel isotropic(double gain, double noise);
};

CovMat2 make_tms(Squeezing r);
BalancedForm tms_balanced(Squeezing r);

/// V -> T V T^T + N, re-symmetrized.
CovMat2 apply_two_mode(const TwoModeChannel& ch, const CovMat2& v);

/// Embeds the channel as I2 (+) T on the untouched mode and applies it.
CovMat2 apply_one_mode(const OneModeChannel& ch, const CovMat2& v, Mode mode);

/// Balanced-form version of apply_one_mode. The channel must be isotropic.
BalancedForm apply_one_mode(const OneModeChannel& ch, const BalancedForm& s,
                            Mode mode);

/// Same as the isotropic apply_one_mode with the channel given by its scalars.
BalancedForm apply_isotropic(const BalancedForm& s, double gain, double noise,
                             Mode mode) noexcept;
/// Same channel given by its gain and `added` = gain^2/2 + noise - 1/2, the
/// excess variance it adds to vacuum. Use when `added` is known in closed
/// form: loss adds none, conversion adds 4 n_th tau C / S^2.
BalancedForm apply_isotropic_excess(const BalancedForm& s, double gain, double added,
                                    Mode mode) noexcept;

/// Channel that applies `first` then `second`.
TwoModeChannel compose(const TwoModeChannel& first, const TwoModeChannel& second);

/// Pure loss with transmissivity tau: T = sqrt(tau) I2, N = (1 - tau)/2 I2.
OneModeChannel loss_channel(double tau);

/// Minimum symplectic eigenvalue of the partially transposed CM,
/// (a + b - sqrt((a - b)^2 + 4 c^2)) / 2.
double min_sympl_eig_pt(const BalancedForm& s) noexcept;

/// nu - 1/2 evaluated from the separability margin k:
/// 2 k (1 + 1/(x + y + R)) / (a + b + R) with R = sqrt((a - b)^2 + 4 c^2).
/// Negative iff the state is entangled.
double nu_offset(const BalancedForm& s) noexcept;

/// Same quantity for an arbitrary two-mode CM, from the symplectic invariants
/// of the partial transpose. Used as an independent check of the balanced
/// closed form.
double min_sympl_eig_pt(const CovMat2& v);

/// E = max(0, -log2(2 nu)).
double log_negativity(const BalancedForm& s) noexcept;
double log_negativity_from_nu(double nu) noexcept;
/// Same from nu - 1/2, without losing digits when nu is close to 1/2.
double log_negativity_from_offset(double offset) noexcept;

inline bool is_entangled(const BalancedForm& s) noexcept { return s.margin() < 0.0; }

/// True iff every eigenvalue of v + (i/2) Omega is >= -1e-10.
bool physicality_check(const CovMat2& v);

}  // namespace gausslink
