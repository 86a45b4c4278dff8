#include "cbern/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbern {

std::string_view to_string(Smoothness s) {
  switch (s) {
    case Smoothness::C0: return "C0";
    case Smoothness::C1: return "C1";
    case Smoothness::C2: return "C2";
    case Smoothness::LipschitzDerivative: return "Lipschitz-derivative";
  }
  return "?";
}

bool second_derivative_consistent(const RealFunction& f) {
  if (!f.second_derivative) return true;
  constexpr double h = 1e-4;
  constexpr int points = 101;
  for (int i = 1; i <= points; ++i) {
    const double x = static_cast<double>(i) / (points + 1);
    const double fd = (f(x - h) - 2.0 * f(x) + f(x + h)) / (h * h);
    const double exact = (*f.second_derivative)(x);
    if (std::abs(fd - exact) > 1e-5 * std::max(1.0, std::abs(exact))) return false;
  }
  return true;
}

RealFunction product(const RealFunction& f, const RealFunction& g) {
  RealFunction fg;
  fg.label = f.label + "*" + g.label;
  fg.smoothness = std::min(f.smoothness, g.smoothness);
  fg.eval = [f = f.eval, g = g.eval](double x) { return f(x) * g(x); };
  if (f.first_derivative && g.first_derivative) {
    fg.first_derivative = [f = f.eval, g = g.eval, df = *f.first_derivative,
                           dg = *g.first_derivative](double x) {
      return df(x) * g(x) + f(x) * dg(x);
    };
  }
  if (f.second_derivative && g.second_derivative && f.first_derivative &&
      g.first_derivative) {
    fg.second_derivative = [f = f.eval, g = g.eval, df = *f.first_derivative,
                            dg = *g.first_derivative, d2f = *f.second_derivative,
                            d2g = *g.second_derivative](double x) {
      return d2f(x) * g(x) + 2.0 * df(x) * dg(x) + f(x) * d2g(x);
    };
  }
  return fg;
}

RealFunction constant(double c, std::string label) {
  return RealFunction{std::move(label), Smoothness::C2,
                      [c](double) { return c; }, [](double) { return 0.0; },
                      [](double) { return 0.0; }};
}

namespace {

std::vector<RealFunction> make_corpus() {
  using std::numbers::pi;
  std::vector<RealFunction> c;
  c.push_back(constant(1.0, "e0"));
  c.push_back({"e1", Smoothness::C2, [](double x) { return x; },
               [](double) { return 1.0; }, [](double) { return 0.0; }});
  c.push_back({"e2", Smoothness::C2, [](double x) { return x * x; },
               [](double x) { return 2.0 * x; }, [](double) { return 2.0; }});
  c.push_back({"e3", Smoothness::C2, [](double x) { return x * x * x; },
               [](double x) { return 3.0 * x * x; },
               [](double x) { return 6.0 * x; }});
  // Kink at 1/2: Lipschitz, not C1.
  c.push_back({"abs_half", Smoothness::C0,
               [](double x) { return std::abs(x - 0.5); },
               [](double x) { return x < 0.5 ? -1.0 : 1.0; }, std::nullopt});
  c.push_back({"sin2pi", Smoothness::C2,
               [](double x) { return std::sin(2.0 * pi * x); },
               [](double x) { return 2.0 * pi * std::cos(2.0 * pi * x); },
               [](double x) { return -4.0 * pi * pi * std::sin(2.0 * pi * x); }});
  c.push_back({"exp", Smoothness::C2, [](double x) { return std::exp(x); },
               [](double x) { return std::exp(x); },
               [](double x) { return std::exp(x); }});
  // Unbounded derivative at 0: neither Lipschitz nor C1 on [0,1].
  c.push_back({"sqrt", Smoothness::C0, [](double x) { return std::sqrt(x); },
               std::nullopt, std::nullopt});
  c.push_back({"runge", Smoothness::C2,
               [](double x) {
                 const double u = x - 0.5;
                 return 1.0 / (1.0 + 25.0 * u * u);
               },
               [](double x) {
                 const double u = x - 0.5;
                 const double d = 1.0 + 25.0 * u * u;
                 return -50.0 * u / (d * d);
               },
               [](double x) {
                 const double u = x - 0.5;
                 const double d = 1.0 + 25.0 * u * u;
                 return (3750.0 * u * u - 50.0) / (d * d * d);
               }});
  // C1 with a Hoelder-1/2 derivative.
  c.push_back({"x32", Smoothness::C1, [](double x) { return x * std::sqrt(x); },
               [](double x) { return 1.5 * std::sqrt(x); }, std::nullopt});
  return c;
}

}  // namespace

const std::vector<RealFunction>& corpus() {
  static const std::vector<RealFunction> c = make_corpus();
  return c;
}

std::size_t corpus_index(std::string_view label) {
  const auto& c = corpus();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].label == label) return i;
  throw std::invalid_argument("unknown function label: " + std::string(label));
}

const RealFunction& corpus_function(std::string_view label) {
  return corpus()[corpus_index(label)];
}

std::vector<std::string> corpus_labels() {
  std::vector<std::string> out;
  for (const auto& f : corpus()) out.push_back(f.label);
  return out;
}

}  // namespace cbern
