#include "hawkes/rate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hawkes/error.hpp"

namespace hawkes {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExpSigmoid as_sigmoid(const RateFunction::Variant& v) {
  return std::visit(overloaded{
                        [](PaperF1) { return ExpSigmoid{10.0, 400.0}; },
                        [](PaperF2) { return ExpSigmoid{1.0, 40.0}; },
                        [](const ExpSigmoid& s) { return s; },
                        [](const ConstantRate&) { return ExpSigmoid{}; },
                    },
                    v);
}

std::vector<double> parse_braced_numbers(std::string_view body, std::string_view full) {
  std::vector<double> out;
  std::string text(body);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw InvalidArgument("malformed rate function '" + std::string(full) + "'");
    }
    item = item.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size()) {
      throw InvalidArgument("malformed number '" + item + "' in rate function '" +
                            std::string(full) + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double ExpSigmoid::crossover() const { return std::log(ceiling / (2.0 * prefactor)); }

double ExpSigmoid::sigmoid_coefficient() const {
  return ceiling * ceiling / (4.0 * prefactor * prefactor);
}

RateFunction::RateFunction(Variant v) : impl_(v) {
  if (const auto* s = std::get_if<ExpSigmoid>(&impl_)) {
    if (!(s->prefactor > 0.0) || !(s->ceiling > 0.0)) {
      throw InvalidArgument("sigmoid rate requires a > 0 and A > 0");
    }
  }
  if (const auto* c = std::get_if<ConstantRate>(&impl_)) {
    if (!(c->value >= 0.0)) throw InvalidArgument("constant rate must be >= 0");
    constant_ = true;
    value_ = c->value;
    return;
  }
  const ExpSigmoid s = as_sigmoid(impl_);
  constant_ = false;
  prefactor_ = s.prefactor;
  ceiling_ = s.ceiling;
  crossover_ = s.crossover();
  coefficient_ = s.sigmoid_coefficient();
}

RateFunction RateFunction::parse(std::string_view name) {
  if (name == "paper_f1") return paper_f1();
  if (name == "paper_f2") return paper_f2();
  const auto open = name.find('{');
  if (open == std::string_view::npos || name.back() != '}') {
    throw InvalidArgument("unknown rate function '" + std::string(name) + "'");
  }
  const std::string_view head = name.substr(0, open);
  const auto args = parse_braced_numbers(name.substr(open + 1, name.size() - open - 2), name);
  if (head == "sigmoid") {
    if (args.size() != 2) {
      throw InvalidArgument("sigmoid{a,A} takes exactly two parameters");
    }
    return sigmoid(args[0], args[1]);
  }
  if (head == "const") {
    if (args.size() != 1 || !std::isfinite(args[0])) {
      throw InvalidArgument("const{v} takes exactly one finite parameter");
    }
    return constant(args[0]);
  }
  throw InvalidArgument("unknown rate function '" + std::string(name) + "'");
}

double RateFunction::eval(double x) const {
  if (constant_) return value_;
  if (x < crossover_) return prefactor_ * std::exp(x);
  return ceiling_ / (1.0 + coefficient_ * std::exp(-2.0 * x));
}

double RateFunction::derivative(double x) const {
  if (constant_) return 0.0;
  if (x < crossover_) return prefactor_ * std::exp(x);
  const double u = coefficient_ * std::exp(-2.0 * x);
  const double denom = 1.0 + u;
  return 2.0 * ceiling_ * u / (denom * denom);
}

double RateFunction::sup() const { return constant_ ? value_ : ceiling_; }

// The derivative peaks at the crossover, where it equals A/2.
double RateFunction::lipschitz() const { return constant_ ? 0.0 : 0.5 * ceiling_; }

std::string RateFunction::name() const {
  return std::visit(overloaded{
                        [](PaperF1) -> std::string { return "paper_f1"; },
                        [](PaperF2) -> std::string { return "paper_f2"; },
                        [](const ExpSigmoid& s) -> std::string {
                          return "sigmoid{" + format_number(s.prefactor) + "," +
                                 format_number(s.ceiling) + "}";
                        },
                        [](const ConstantRate& c) -> std::string {
                          return "const{" + format_number(c.value) + "}";
                        },
                    },
                    impl_);
}

double rate_eval(const RateFunction& f, double x) { return f.eval(x); }
double rate_derivative(const RateFunction& f, double x) { return f.derivative(x); }
double rate_sup(const RateFunction& f) { return f.sup(); }
double rate_lipschitz(const RateFunction& f) { return f.lipschitz(); }

}  // namespace hawkes
