#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbern {

using Scalar = std::function<double(double)>;

enum class Smoothness { C0, C1, C2, LipschitzDerivative };

std::string_view to_string(Smoothness s);

/// A black-box real function on [0,1] together with the smoothness metadata
/// the error bounds need. Derivatives, when present, are exact closed forms.
struct RealFunction {
  std::string label;
  Smoothness smoothness = Smoothness::C0;
  Scalar eval;
  std::optional<Scalar> first_derivative;
  std::optional<Scalar> second_derivative;

  double operator()(double x) const { return eval(x); }

  bool has_second_derivative() const { return second_derivative.has_value(); }
  // A bounded first derivative is what makes a corpus member Lipschitz.
  bool is_lipschitz() const { return first_derivative.has_value(); }
};

/// Checks the declared second derivative against a central difference of
/// eval (step 1e-4) at 101 interior points. Tolerance is 1e-5 relative to
/// max(1, |f''|). Functions without a second derivative trivially pass.
bool second_derivative_consistent(const RealFunction& f);

/// Pointwise product f*g. Carries derivatives when both factors do.
RealFunction product(const RealFunction& f, const RealFunction& g);

RealFunction constant(double c, std::string label = "const");

// The built-in corpus, in its canonical order:
// e0, e1, e2, e3, abs_half, sin2pi, exp, sqrt, runge, x32.
const std::vector<RealFunction>& corpus();
const RealFunction& corpus_function(std::string_view label);
std::vector<std::string> corpus_labels();
std::size_t corpus_index(std::string_view label);

}  // namespace cbern
