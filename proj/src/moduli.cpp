#include "cbern/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbern {

namespace {

struct Hull {
  std::vector<double> t;
  std::vector<double> v;
};

double cross(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

// Upper hull by monotone chain; points sorted by t.
Hull upper_hull(std::span<const double> t, std::span<const double> v) {
  Hull h;
  for (std::size_t i = 0; i < t.size(); ++i) {
    while (h.t.size() >= 2) {
      const std::size_t s = h.t.size();
      if (cross(h.t[s - 2], h.v[s - 2], h.t[s - 1], h.v[s - 1], t[i], v[i]) >= 0.0) {
        h.t.pop_back();
        h.v.pop_back();
      } else {
        break;
      }
    }
    h.t.push_back(t[i]);
    h.v.push_back(v[i]);
  }
  return h;
}

double hull_eval(const Hull& h, double t) {
  if (t <= h.t.front()) return h.v.front();
  if (t >= h.t.back()) return h.v.back();
  const auto it = std::upper_bound(h.t.begin(), h.t.end(), t);
  const auto hi = static_cast<std::size_t>(it - h.t.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - h.t[lo]) / (h.t[hi] - h.t[lo]);
  return (1.0 - w) * h.v[lo] + w * h.v[hi];
}

void require_grid(int n) {
  if (n < 64) throw std::invalid_argument("modulus grid size must be >= 64");
}

}  // namespace

ModulusTable::ModulusTable(RealFunction f, int grid_size)
    : ModulusTable(std::move(f), Interval(0.0, 1.0), grid_size) {}

ModulusTable::ModulusTable(RealFunction f, Interval domain, int grid_size)
    : f_(std::move(f)), domain_(domain), n_(grid_size) {
  require_grid(n_);
  const auto count = static_cast<std::size_t>(n_) + 1;
  samples_.resize(count);
  for (int i = 0; i <= n_; ++i) samples_[i] = f_(grid_point(i));

  for (std::size_t i = 0; i + 1 < count; ++i)
    slack_ = std::max(slack_, std::abs(samples_[i + 1] - samples_[i]));
  slack_ *= 2.0;

  omega1_grid_.assign(count, 0.0);
  for (std::size_t d = 1; d < count; ++d) {
    double best = 0.0;
    for (std::size_t i = 0; i + d < count; ++i)
      best = std::max(best, std::abs(samples_[i + d] - samples_[i]));
    omega1_grid_[d] = std::max(best, omega1_grid_[d - 1]);
  }

  const std::size_t half = static_cast<std::size_t>(n_) / 2;
  omega2_grid_.assign(half + 1, 0.0);
  for (std::size_t j = 1; j <= half; ++j) {
    double best = 0.0;
    for (std::size_t i = j; i + j < count; ++i)
      best = std::max(best, std::abs(samples_[i - j] - 2.0 * samples_[i] + samples_[i + j]));
    omega2_grid_[j] = std::max(best, omega2_grid_[j - 1]);
  }

  std::vector<double> steps(count);
  for (int j = 0; j <= n_; ++j) steps[j] = step(j);
  const Hull h = upper_hull(steps, omega1_grid_);
  hull_t_ = h.t;
  hull_v_ = h.v;
}

double ModulusTable::grid_point(int i) const {
  if (i == n_) return domain_.b;
  return domain_.a + domain_.length() * i / n_;
}

double ModulusTable::omega1(double t) const {
  if (t < 0.0) throw std::invalid_argument("omega1: negative step");
  const double len = domain_.length();
  if (t >= len) return omega1_grid_.back();

  int j = std::clamp(static_cast<int>(std::floor(t * n_ / len)), 0, n_);
  while (j > 0 && step(j) > t) --j;
  while (j < n_ && step(j + 1) <= t) ++j;
  double best = omega1_grid_[j];
  if (step(j) == t) return best;

  const auto at = [&](double x) { return f_(std::clamp(x, domain_.a, domain_.b)); };
  for (int i = 0; i <= n_; ++i) {
    const double x = grid_point(i);
    const double y = x + t;
    if (y > domain_.b) break;
    best = std::max(best, std::abs(at(y) - samples_[i]));
  }
  best = std::max(best, std::abs(samples_.back() - at(domain_.b - t)));
  return best;
}

double ModulusTable::omega2(double delta) const {
  if (delta < 0.0) throw std::invalid_argument("omega2: negative delta");
  const double len = domain_.length();
  const int half = n_ / 2;
  int j = std::clamp(static_cast<int>(std::floor(delta * n_ / len)), 0, half);
  while (j > 0 && step(j) > delta) --j;
  while (j < half && step(j + 1) <= delta) ++j;
  double best = omega2_grid_[j];
  if (step(j) == delta || delta > 0.5 * len) return best;

  const double h = delta;
  const auto at = [&](double x) { return f_(std::clamp(x, domain_.a, domain_.b)); };
  const auto second_diff = [&](double x, double fx) {
    return std::abs(at(x - h) - 2.0 * fx + at(x + h));
  };
  for (int i = 0; i <= n_; ++i) {
    const double x = grid_point(i);
    if (x - h < domain_.a) continue;
    if (x + h > domain_.b) break;
    best = std::max(best, second_diff(x, samples_[i]));
  }
  const double left = domain_.a + h;
  const double right = domain_.b - h;
  best = std::max(best, second_diff(left, at(left)));
  best = std::max(best, second_diff(right, at(right)));
  return best;
}

double ModulusTable::hull_at(double t) const {
  return hull_eval(Hull{hull_t_, hull_v_}, t);
}

double ModulusTable::omega_tilde(double t) const {
  if (t < 0.0) throw std::invalid_argument("omega_tilde: negative step");
  if (t >= domain_.length()) return omega1_grid_.back();
  // Adding the point (t, omega1(t)) to the hull raises it at t to at most
  // that value, so the majorant at t is the larger of the two.
  return std::max(hull_at(t), omega1(t));
}

ModulusEstimate ModulusTable::estimate(ModulusKind kind) const {
  ModulusEstimate e{kind, domain_, n_, {}, {}};
  e.steps.resize(static_cast<std::size_t>(n_) + 1);
  e.values.resize(e.steps.size());
  for (int j = 0; j <= n_; ++j) {
    e.steps[j] = step(j);
    switch (kind) {
      case ModulusKind::Omega1: e.values[j] = omega1_grid_[j]; break;
      case ModulusKind::Omega2:
        e.values[j] = omega2_grid_[std::min<std::size_t>(j, omega2_grid_.size() - 1)];
        break;
      case ModulusKind::OmegaTilde: e.values[j] = hull_at(e.steps[j]); break;
    }
  }
  return e;
}

double omega1(const RealFunction& f, const Interval& iv, double t, int grid_size) {
  if (t < 0.0) throw std::invalid_argument("omega1: negative step");
  return ModulusTable(f, iv, grid_size).omega1(t);
}

double omega2(const RealFunction& f, const Interval& iv, double delta, int grid_size) {
  if (delta < 0.0) throw std::invalid_argument("omega2: negative delta");
  return ModulusTable(f, iv, grid_size).omega2(delta);
}

double omega_tilde(const RealFunction& f, double t, int grid_size) {
  if (t < 0.0) throw std::invalid_argument("omega_tilde: negative step");
  return ModulusTable(f, grid_size).omega_tilde(t);
}

double concave_majorant_at(std::span<const double> steps, std::span<const double> values,
                           double t) {
  if (steps.empty() || steps.size() != values.size())
    throw std::invalid_argument("concave_majorant_at: mismatched samples");
  if (t < 0.0) throw std::invalid_argument("concave_majorant_at: negative step");
  std::vector<double> ts(steps.begin(), steps.end());
  std::vector<double> vs(values.begin(), values.end());
  if (ts.front() != 0.0) {
    ts.insert(ts.begin(), 0.0);
    vs.insert(vs.begin(), 0.0);
  }
  if (t >= ts.back()) return vs.back();
  return hull_eval(upper_hull(ts, vs), t);
}

// ---------------------------------------------------------------------------
// K-functional

namespace {

constexpr int kKSamples = 1001;

double sampled_distance(const RealFunction& f, const RealFunction& g) {
  double d = 0.0;
  for (int i = 0; i < kKSamples; ++i) {
    const double x = static_cast<double>(i) / (kKSamples - 1);
    d = std::max(d, std::abs(f(x) - g(x)));
  }
  return d;
}

double sampled_curvature(const RealFunction& g) {
  double c = 0.0;
  for (int i = 0; i < kKSamples; ++i) {
    const double x = static_cast<double>(i) / (kKSamples - 1);
    c = std::max(c, std::abs((*g.second_derivative)(x)));
  }
  return c;
}

}  // namespace

KFunctional::KFunctional(const RealFunction& f, const std::vector<RealFunction>& candidates) {
  const auto add = [&](const RealFunction& g) {
    if (!g.second_derivative)
      throw std::invalid_argument("K-functional candidate '" + g.label +
                                  "' has no second derivative");
    entries_.push_back({g.label, sampled_distance(f, g), sampled_curvature(g)});
  };
  add(constant(0.0, "zero"));
  if (f.has_second_derivative()) add(f);
  if (candidates.empty()) add(constant(f(0.5), "const_mid"));
  for (const auto& g : candidates) add(g);
}

KFunctionalEstimate KFunctional::at(double delta) const {
  if (delta < 0.0) throw std::invalid_argument("K-functional: negative delta");
  KFunctionalEstimate best{delta, std::numeric_limits<double>::infinity(), ""};
  for (const auto& e : entries_) {
    const double value = e.distance + delta * e.curvature;
    if (value < best.value_upper) {
      best.value_upper = value;
      best.witness_label = e.label;
    }
  }
  return best;
}

RealFunction bernstein_smoothing(const RealFunction& f, int degree) {
  if (degree < 2 || degree > kMaxDegree)
    throw std::invalid_argument("bernstein_smoothing: degree must be in [2, 64]");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) c[i] = f(static_cast<double>(i) / degree);
  std::vector<double> d1(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) d1[i] = degree * (c[i + 1] - c[i]);
  std::vector<double> d2(static_cast<std::size_t>(degree) - 1);
  for (int i = 0; i + 1 < degree; ++i) d2[i] = (degree - 1) * (d1[i + 1] - d1[i]);

  RealFunction g;
  g.label = "B" + std::to_string(degree) + "(" + f.label + ")";
  g.smoothness = Smoothness::C2;
  g.eval = [c](double x) { return de_casteljau(c, x); };
  g.first_derivative = [d1](double x) { return de_casteljau(d1, x); };
  g.second_derivative = [d2](double x) { return de_casteljau(d2, x); };
  return g;
}

std::vector<RealFunction> default_k_candidates(const RealFunction& f) {
  std::vector<RealFunction> out;
  for (int degree : {4, 8, 16, 32, 64}) out.push_back(bernstein_smoothing(f, degree));
  out.push_back(constant(f(0.5), "const_mid"));
  return out;
}

KFunctionalEstimate k_functional_upper(const RealFunction& f, double delta,
                                       const std::vector<RealFunction>& candidates) {
  return KFunctional(f, candidates).at(delta);
}

}  // namespace cbern
