#include "gausslink/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gausslink/error.hpp"

namespace gausslink {

std::vector<double> halton_point(int index, int dim) {
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidArgument, "halton dimension must be 1..8");
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d) {
    const int base = kPrimes[d];
    double f = 1.0;
    double r = 0.0;
    for (int i = index + 1; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    p[static_cast<std::size_t>(d)] = r;
  }
  return p;
}

namespace {

class Search {
 public:
  Search(const BoxObjective& f, int dim, const BoxOptions& opts)
      : f_(f), dim_(dim), opts_(opts), scratch_(static_cast<std::size_t>(dim)) {}

  bool stopped() const { return stopped_; }

  double eval(const std::vector<double>& x) {
    if (stopped_) return best_value_;
    for (int i = 0; i < dim_; ++i) scratch_[i] = std::clamp(x[i], 0.0, 1.0);
    const double v = f_(scratch_);
    ++evals_;
    offer(scratch_, v);
    if (opts_.stop_below && v < *opts_.stop_below) stopped_ = true;
    return v;
  }

  void nelder_mead(const std::vector<double>& start) {
    const std::size_t n = static_cast<std::size_t>(dim_);
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      double& xi = pts[i + 1][i];
      xi = xi + opts_.initial_step <= 1.0 ? xi + opts_.initial_step : xi - opts_.initial_step;
    }
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    const long budget = evals_ + opts_.max_evals_per_start;
    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    while (!stopped_ && evals_ < budget) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[n - 1];

      double diam = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t d = 0; d < n; ++d) {
          diam = std::max(diam, std::abs(std::clamp(pts[i][d], 0.0, 1.0) -
                                         std::clamp(pts[lo][d], 0.0, 1.0)));
        }
      }
      const double spread = vals[hi] - vals[lo];
      if (diam <= opts_.tol || (spread <= opts_.tol * (std::abs(vals[lo]) + opts_.tol) && diam <= 1e-6)) {
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == hi) continue;
        for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
      }
      for (std::size_t d = 0; d < n; ++d) trial[d] = centroid[d] + (centroid[d] - pts[hi][d]);
      const double fr = eval(trial);
      if (fr < vals[lo]) {
        for (std::size_t d = 0; d < n; ++d) trial2[d] = centroid[d] + 2.0 * (centroid[d] - pts[hi][d]);
        const double fe = eval(trial2);
        if (fe < fr) {
          pts[hi] = trial2;
          vals[hi] = fe;
        } else {
          pts[hi] = trial;
          vals[hi] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[hi] = trial;
        vals[hi] = fr;
        continue;
      }
      const bool outside = fr < vals[hi];
      for (std::size_t d = 0; d < n; ++d) {
        trial2[d] = outside ? centroid[d] + 0.5 * (trial[d] - centroid[d])
                            : centroid[d] + 0.5 * (pts[hi][d] - centroid[d]);
      }
      const double fc = eval(trial2);
      if (fc < (outside ? fr : vals[hi])) {
        pts[hi] = trial2;
        vals[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == lo) continue;
        for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[lo][d] + 0.5 * (pts[i][d] - pts[lo][d]);
        vals[i] = eval(pts[i]);
      }
    }
  }

  void polish() {
    for (int d = 0; d < dim_ && !stopped_; ++d) {
      const std::vector<double> base = best_x_;
      std::vector<double> x = base;
      golden_section_argmin(
          [&](double t) {
            x[static_cast<std::size_t>(d)] = t;
            return eval(x);
          },
          0.0, 1.0, opts_.tol);
    }
  }

  BoxResult result() const {
    BoxResult r;
    r.x = best_x_;
    r.value = best_value_;
    r.evaluations = evals_;
    r.stopped_early = stopped_;
    return r;
  }

  const std::vector<double>& best_x() const { return best_x_; }

 private:
  void offer(std::span<const double> x, double v) {
    if (std::isnan(v)) return;
    if (best_x_.empty()) {
      accept(x, v);
      return;
    }
    // Relative, so values of different sign never tie.
    const double tie = opts_.tie_tol * std::max(std::abs(v), std::abs(best_value_));
    if (v < best_value_ - tie) {
      accept(x, v);
    } else if (v <= best_value_ + tie && opts_.tie_key) {
      if (opts_.tie_key(x) < opts_.tie_key(best_x_)) accept(x, v);
    }
  }

  void accept(std::span<const double> x, double v) {
    best_x_.assign(x.begin(), x.end());
    best_value_ = v;
  }

  const BoxObjective& f_;
  int dim_;
  const BoxOptions& opts_;
  std::vector<double> scratch_;
  std::vector<double> best_x_;
  double best_value_ = std::numeric_limits<double>::infinity();
  long evals_ = 0;
  bool stopped_ = false;
};

}  // namespace

BoxResult minimize_box(const BoxObjective& f, int dim, const BoxOptions& opts) {
  if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidArgument, "box dimension must be 1..8");
  Search s(f, dim, opts);
  const std::size_t n = static_cast<std::size_t>(dim);

  // Corners first: constraint activity usually puts the optimum there.
  std::vector<double> best_corner;
  double best_corner_value = std::numeric_limits<double>::infinity();
  if (opts.corners) {
    for (unsigned mask = (1u << dim); mask-- > 0 && !s.stopped();) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = (mask >> d) & 1u ? 1.0 : 0.0;
      const double v = s.eval(x);
      if (v < best_corner_value) {
        best_corner_value = v;
        best_corner = x;
      }
    }
  }

  std::vector<std::vector<double>> starts = opts.extra_starts;
  if (!best_corner.empty()) starts.push_back(best_corner);
  for (int i = 0; i < opts.quasi_random_starts; ++i) starts.push_back(halton_point(i, dim));
  for (const auto& x0 : starts) {
    if (s.stopped()) break;
    if (x0.size() != n) throw Error(ErrorKind::InvalidArgument, "start point has wrong dimension");
    s.nelder_mead(x0);
  }
  s.polish();
  return s.result();
}

double golden_section_argmin(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  double best = f1 <= f2 ? x1 : x2;
  double best_value = std::min(f1, f2);
  const double flo = f(lo);
  if (flo <= best_value) {
    best = lo;
    best_value = flo;
  }
  if (f(hi) < best_value) best = hi;
  return best;
}

}  // namespace gausslink
