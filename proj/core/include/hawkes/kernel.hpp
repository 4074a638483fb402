#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hawkes/matrix.hpp"

namespace hawkes {

/// Erlang memory kernel h(t) = sign * e^{-rate t} t^order / order!.
struct ErlangKernel {
  int sign = 1;      // -1 inhibitory, +1 excitatory
  double rate = 1.0;  // nu > 0, 1/time
  int order = 0;     // eta >= 0

  /// Throws InvalidArgument unless |sign| = 1, rate > 0 and order >= 0.
  void validate() const;
};

double erlang_eval(const ErlangKernel& kernel, double t);

/// Integral of |h| over [0, inf): 1/rate^{order+1}.
double erlang_l1_norm(const ErlangKernel& kernel);

/// Laplace transform of |h| at alpha > -rate: 1/(rate+alpha)^{order+1}.
double erlang_abs_laplace(const ErlangKernel& kernel, double alpha);

/// Kernel h_{kl}: how spikes of population l feed the input of population k.
class KernelMatrix {
 public:
  explicit KernelMatrix(std::size_t populations);

  /// entries[k][(k+1) mod n] = kernels[k]; every other entry empty.
  static KernelMatrix cyclic(std::span<const ErlangKernel> kernels);

  std::size_t size() const { return n_; }
  const std::optional<ErlangKernel>& at(std::size_t k, std::size_t l) const {
    return entries_[k * n_ + l];
  }
  void set(std::size_t k, std::size_t l, const ErlangKernel& kernel);
  void clear(std::size_t k, std::size_t l) { entries_[k * n_ + l].reset(); }

  /// True when only the cyclic successor entries are populated.
  bool is_cyclic() const;

 private:
  std::size_t n_;
  std::vector<std::optional<ErlangKernel>> entries_;
};

/// Lambda[i][j] = lipschitz[j] * |h_ij|_1, zero where no kernel is set.
Matrix offspring_matrix(const KernelMatrix& kernels, std::span<const double> lipschitz);

/// Perron root of a nonnegative square matrix.
///
/// Power iteration from the all-ones vector on M + I (shifting keeps cyclic,
/// imprimitive matrices convergent), relative tolerance 1e-12, at most 1e5
/// iterations. For n = 2 with zero diagonal the closed form sqrt(M01 M10) is
/// returned directly.
double spectral_radius(const Matrix& m);

enum class Criticality { subcritical, supercritical, critical_boundary };

const char* to_string(Criticality c);

struct CriticalityReport {
  Matrix offspring;
  double radius = 0.0;
  Criticality regime = Criticality::subcritical;
  std::optional<double> alpha0;  // present iff supercritical
};

/// Growth exponent: the alpha > 0 where the Laplace-transformed kernel
/// matrix has spectral radius exactly 1. Throws if not supercritical.
double compute_alpha0(const KernelMatrix& kernels, std::span<const double> lipschitz);

CriticalityReport classify_criticality(const KernelMatrix& kernels,
                                       std::span<const double> lipschitz);

}  // namespace hawkes
