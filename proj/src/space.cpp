#include "farpoint/space.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "farpoint/error.hpp"

namespace farpoint {

namespace {

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> merged_breakpoints(const GridFunction& u, const GridFunction& w) {
  std::vector<double> out;
  out.reserve(u.size() + w.size());
  std::set_union(u.breakpoints().begin(), u.breakpoints().end(), w.breakpoints().begin(),
                 w.breakpoints().end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

GridFunction::GridFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || breakpoints_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidVector,
                "grid function needs at least two breakpoints and one value per breakpoint");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw Error(ErrorCode::InvalidVector, "breakpoints must start at 0 and end at 1");
  }
  if (std::adjacent_find(breakpoints_.begin(), breakpoints_.end(), std::greater_equal<>()) !=
      breakpoints_.end()) {
    throw Error(ErrorCode::InvalidVector, "breakpoints must be strictly increasing");
  }
  if (!all_finite(values_)) {
    throw Error(ErrorCode::InvalidVector, "grid function values must be finite");
  }
}

GridFunction GridFunction::constant(double c) { return GridFunction({0.0, 1.0}, {c, c}); }

double GridFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "evaluation point outside [0, 1]");
  }
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  auto i = static_cast<std::size_t>(it - breakpoints_.begin());
  if (breakpoints_[i] == t) return values_[i];
  const double t0 = breakpoints_[i - 1];
  const double t1 = breakpoints_[i];
  const double v0 = values_[i - 1];
  const double v1 = values_[i];
  const double w = (t - t0) / (t1 - t0);
  const double v = v0 + w * (v1 - v0);
  // Rounding must not push the interpolant past its endpoints; sup norms rely on it.
  return std::clamp(v, std::min(v0, v1), std::max(v0, v1));
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Vector::Vector(std::vector<double> entries) : rep_(std::move(entries)) {}
Vector::Vector(GridFunction function) : rep_(std::move(function)) {}

Vector Vector::coordinates(std::vector<double> entries) {
  if (entries.empty()) throw Error(ErrorCode::InvalidVector, "coordinate vector needs dimension >= 1");
  if (!all_finite(entries)) throw Error(ErrorCode::InvalidVector, "coordinates must be finite");
  return Vector(std::move(entries));
}

Vector Vector::zeros(std::size_t dimension) { return coordinates(std::vector<double>(dimension, 0.0)); }

Vector Vector::basis(std::size_t dimension, std::size_t axis) {
  if (axis >= dimension) throw Error(ErrorCode::IndexOutOfRange, "basis axis out of range");
  std::vector<double> e(dimension, 0.0);
  e[axis] = 1.0;
  return coordinates(std::move(e));
}

std::span<const double> Vector::coords() const {
  if (!is_coordinates()) throw Error(ErrorCode::RepresentationMismatch, "vector is a grid function");
  return std::get<std::vector<double>>(rep_);
}

const GridFunction& Vector::function() const {
  if (!is_grid()) throw Error(ErrorCode::RepresentationMismatch, "vector is a coordinate list");
  return std::get<GridFunction>(rep_);
}

std::size_t Vector::dimension() const {
  return is_coordinates() ? std::get<std::vector<double>>(rep_).size() : 0;
}

Vector linear_combination(double a, const Vector& u, double b, const Vector& w) {
  if (u.is_coordinates() && w.is_coordinates()) {
    auto cu = u.coords();
    auto cw = w.coords();
    if (cu.size() != cw.size()) throw Error(ErrorCode::RepresentationMismatch, "dimension mismatch");
    std::vector<double> out(cu.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * cu[i] + b * cw[i];
    return Vector::coordinates(std::move(out));
  }
  if (u.is_grid() && w.is_grid()) {
    const GridFunction& fu = u.function();
    const GridFunction& fw = w.function();
    std::vector<double> ts = merged_breakpoints(fu, fw);
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vs[i] = a * fu(ts[i]) + b * fw(ts[i]);
    return Vector(GridFunction(std::move(ts), std::move(vs)));
  }
  throw Error(ErrorCode::RepresentationMismatch, "cannot combine a coordinate list with a grid function");
}

Vector operator+(const Vector& a, const Vector& b) { return linear_combination(1.0, a, 1.0, b); }
Vector operator-(const Vector& a, const Vector& b) { return linear_combination(1.0, a, -1.0, b); }

Vector operator*(double s, const Vector& v) {
  if (v.is_coordinates()) {
    std::vector<double> out(v.coords().begin(), v.coords().end());
    for (double& x : out) x *= s;
    return Vector::coordinates(std::move(out));
  }
  const GridFunction& f = v.function();
  std::vector<double> vs(f.values().begin(), f.values().end());
  for (double& x : vs) x *= s;
  return Vector(GridFunction({f.breakpoints().begin(), f.breakpoints().end()}, std::move(vs)));
}

NormedSpace NormedSpace::euclidean(std::size_t dimension) {
  if (dimension == 0) throw Error(ErrorCode::InvalidParameter, "Euclidean dimension must be >= 1");
  return NormedSpace(Kind::Euclidean, dimension);
}

NormedSpace NormedSpace::sup_norm_on_unit_interval() { return NormedSpace(Kind::SupNormOnK, 0); }

NormedSpace NormedSpace::natural_for(const Vector& v) {
  return v.is_coordinates() ? euclidean(v.dimension()) : sup_norm_on_unit_interval();
}

bool NormedSpace::contains(const Vector& v) const {
  if (kind_ == Kind::Euclidean) return v.is_coordinates() && v.dimension() == dimension_;
  return v.is_grid();
}

void NormedSpace::require(const Vector& v) const {
  if (!contains(v)) {
    throw Error(ErrorCode::RepresentationMismatch,
                kind_ == Kind::Euclidean
                    ? "expected a coordinate vector of dimension " + std::to_string(dimension_)
                    : std::string("expected a grid function on [0, 1]"));
  }
}

double norm(const NormedSpace& space, const Vector& v) {
  space.require(v);
  if (space.kind() == NormedSpace::Kind::Euclidean) {
    double sum = 0.0;
    for (double c : v.coords()) sum += c * c;
    return std::sqrt(sum);
  }
  double m = 0.0;
  for (double x : v.function().values()) m = std::max(m, std::abs(x));
  return m;
}

double distance(const NormedSpace& space, const Vector& a, const Vector& b) {
  return norm(space, a - b);
}

Functional Functional::dual(std::vector<double> coefficients) {
  double sum = 0.0;
  for (double c : coefficients) sum += c * c;
  const double bound = std::sqrt(sum);
  return Functional(DualCoordinates{std::move(coefficients)}, bound);
}

Functional Functional::point_mass(double location, int sign) {
  if (!(location >= 0.0 && location <= 1.0) || (sign != 1 && sign != -1)) {
    throw Error(ErrorCode::InvalidParameter, "point mass needs location in [0, 1] and sign +-1");
  }
  return Functional(SignedPointMass{location, sign}, 1.0);
}

std::span<const double> Functional::coefficients() const {
  if (!is_dual_coordinates()) throw Error(ErrorCode::RepresentationMismatch, "functional is a point mass");
  return std::get<DualCoordinates>(rep_).coefficients;
}

const SignedPointMass& Functional::point_mass() const {
  if (is_dual_coordinates()) throw Error(ErrorCode::RepresentationMismatch, "functional is a coordinate list");
  return std::get<SignedPointMass>(rep_);
}

Functional norming_functional(const NormedSpace& space, const Vector& v) {
  const double n = norm(space, v);
  if (n == 0.0) throw Error(ErrorCode::DegenerateVector, "no norming functional selected for the zero vector");
  if (space.kind() == NormedSpace::Kind::Euclidean) {
    std::vector<double> g(v.coords().begin(), v.coords().end());
    for (double& c : g) c /= n;
    return Functional::dual(std::move(g));
  }
  const GridFunction& fn = v.function();
  auto vals = fn.values();
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > std::abs(vals[best])) best = i;
  }
  return Functional::point_mass(fn.breakpoints()[best], vals[best] < 0.0 ? -1 : 1);
}

double apply_functional(const Functional& g, const Vector& v) {
  if (g.is_dual_coordinates()) {
    auto c = g.coefficients();
    auto x = v.coords();
    if (c.size() != x.size()) throw Error(ErrorCode::RepresentationMismatch, "dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
    return s;
  }
  const SignedPointMass& m = g.point_mass();
  return m.sign * v.function()(m.location);
}

}  // namespace farpoint
