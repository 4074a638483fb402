#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace hawkes {

/// Exponential branch a*e^x glued C1 to the sigmoid A/(1 + B e^{-2x}),
/// B = A^2/(4a^2), at the crossover x0 = log(A/(2a)). Both branches equal A/2
/// there and have slope A/2, which is also the global Lipschitz constant.
struct ExpSigmoid {
  double prefactor = 1.0;  // a
  double ceiling = 1.0;    // A

  double crossover() const;
  double sigmoid_coefficient() const;  // B
};

/// f1 of the two-population study: 10e^x below log 20, 400/(1+400e^{-2x}) above.
struct PaperF1 {};
/// f2 of the two-population study: e^x below log 20, 40/(1+400e^{-2x}) above.
struct PaperF2 {};

struct ConstantRate {
  double value = 0.0;
};

/// Spiking rate function: nonnegative, nondecreasing, bounded and C1.
class RateFunction {
 public:
  using Variant = std::variant<PaperF1, PaperF2, ExpSigmoid, ConstantRate>;

  RateFunction() : impl_(ConstantRate{0.0}) {}
  RateFunction(Variant v);  // NOLINT(google-explicit-constructor)

  static RateFunction paper_f1() { return RateFunction(PaperF1{}); }
  static RateFunction paper_f2() { return RateFunction(PaperF2{}); }
  static RateFunction sigmoid(double prefactor, double ceiling) {
    return RateFunction(ExpSigmoid{prefactor, ceiling});
  }
  static RateFunction constant(double v) { return RateFunction(ConstantRate{v}); }

  /// Parses "paper_f1", "paper_f2", "sigmoid{a,A}" and "const{v}".
  static RateFunction parse(std::string_view name);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double derivative(double x) const;
  double sup() const;
  double lipschitz() const;

  bool is_constant() const { return std::holds_alternative<ConstantRate>(impl_); }
  const Variant& variant() const { return impl_; }

  /// Canonical configuration name; parse(name()) round-trips.
  std::string name() const;

 private:
  Variant impl_;
  // Cached shape: value_ for constants, otherwise the glued sigmoid.
  bool constant_ = true;
  double value_ = 0.0;
  double prefactor_ = 1.0;
  double ceiling_ = 1.0;
  double crossover_ = 0.0;
  double coefficient_ = 0.0;
};

double rate_eval(const RateFunction& f, double x);
double rate_derivative(const RateFunction& f, double x);
double rate_sup(const RateFunction& f);
double rate_lipschitz(const RateFunction& f);

}  // namespace hawkes
