#pragma once

#include <string>

#include "farpoint/space.hpp"

namespace farpoint {

/// The perturbation f subtracted inside the supremum. All variants are
/// nonnegative; a nonnegative constant offset may be added on top.
class Perturbation {
 public:
  enum class Kind { Zero, NormOf, OneMinusNormPlus, PairIndicator };

  static Perturbation zero();
  /// f(z) = ||z||
  static Perturbation norm_of();
  /// f(z) = max(0, 1 - ||z||)
  static Perturbation one_minus_norm_plus();
  /// f(z) = 1_{a, b}(z) / k on the real line.
  static Perturbation pair_indicator(int k, double a = 0.0, double b = 1.0);

  /// The same perturbation plus a constant a >= 0.
  Perturbation plus_constant(double a) const;

  Kind kind() const { return kind_; }
  int k() const { return k_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double offset() const { return offset_; }

  std::string name() const;

 private:
  explicit Perturbation(Kind kind) : kind_(kind) {}

  Kind kind_;
  int k_ = 1;
  double a_ = 0.0;
  double b_ = 1.0;
  double offset_ = 0.0;
};

double perturbation_eval(const Perturbation& f, const NormedSpace& space, const Vector& z);

/// ||x - z|| - f(z), the quantity whose supremum over C is r(x).
double objective(const NormedSpace& space, const Perturbation& f, const Vector& x, const Vector& z);

}  // namespace farpoint
