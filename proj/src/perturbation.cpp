#include "farpoint/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "farpoint/error.hpp"

namespace farpoint {

Perturbation Perturbation::zero() { return Perturbation(Kind::Zero); }
Perturbation Perturbation::norm_of() { return Perturbation(Kind::NormOf); }
Perturbation Perturbation::one_minus_norm_plus() { return Perturbation(Kind::OneMinusNormPlus); }

Perturbation Perturbation::pair_indicator(int k, double a, double b) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "pair indicator needs k >= 1");
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidParameter, "pair indicator endpoints must be finite");
  }
  Perturbation p(Kind::PairIndicator);
  p.k_ = k;
  p.a_ = a;
  p.b_ = b;
  return p;
}

Perturbation Perturbation::plus_constant(double a) const {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidParameter, "constant shift must be finite and nonnegative");
  }
  Perturbation p = *this;
  p.offset_ += a;
  return p;
}

std::string Perturbation::name() const {
  std::string base;
  switch (kind_) {
    case Kind::Zero: base = "zero"; break;
    case Kind::NormOf: base = "norm_of"; break;
    case Kind::OneMinusNormPlus: base = "one_minus_norm_plus"; break;
    case Kind::PairIndicator: base = "pair_indicator_k" + std::to_string(k_); break;
  }
  return base;
}

double perturbation_eval(const Perturbation& f, const NormedSpace& space, const Vector& z) {
  space.require(z);
  double value = 0.0;
  switch (f.kind()) {
    case Perturbation::Kind::Zero:
      break;
    case Perturbation::Kind::NormOf:
      value = norm(space, z);
      break;
    case Perturbation::Kind::OneMinusNormPlus:
      value = std::max(0.0, 1.0 - norm(space, z));
      break;
    case Perturbation::Kind::PairIndicator: {
      if (!z.is_coordinates() || z.dimension() != 1) {
        throw Error(ErrorCode::RepresentationMismatch, "pair indicator is defined on scalars only");
      }
      const double s = z.coords()[0];
      value = (s == f.a() || s == f.b()) ? 1.0 / f.k() : 0.0;
      break;
    }
  }
  return value + f.offset();
}

double objective(const NormedSpace& space, const Perturbation& f, const Vector& x, const Vector& z) {
  return distance(space, x, z) - perturbation_eval(f, space, z);
}

}  // namespace farpoint
