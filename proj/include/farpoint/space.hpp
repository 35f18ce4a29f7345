#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace farpoint {

/// Piecewise-linear function on K = [0, 1].
///
/// Breakpoints are strictly increasing, start at 0 and end at 1. Between
/// breakpoints the function is the linear interpolant, so every extremum of
/// |v| sits on a breakpoint.
class GridFunction {
 public:
  GridFunction(std::vector<double> breakpoints, std::vector<double> values);

  static GridFunction constant(double c);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return breakpoints_.size(); }

  /// Evaluates the interpolant at t in [0, 1]. The result always lies
  /// between the two bracketing breakpoint values.
  double operator()(double t) const;

  double min_value() const;
  double max_value() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// An element of one of the model spaces: a coordinate list in R^d or a
/// grid function on [0, 1].
class Vector {
 public:
  static Vector coordinates(std::vector<double> entries);
  static Vector zeros(std::size_t dimension);
  static Vector basis(std::size_t dimension, std::size_t axis);
  explicit Vector(GridFunction function);

  bool is_coordinates() const { return std::holds_alternative<std::vector<double>>(rep_); }
  bool is_grid() const { return std::holds_alternative<GridFunction>(rep_); }

  // Both accessors throw RepresentationMismatch on the wrong alternative.
  std::span<const double> coords() const;
  const GridFunction& function() const;

  /// Coordinate count; 0 for grid functions.
  std::size_t dimension() const;

  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator*(double s, const Vector& v);

 private:
  explicit Vector(std::vector<double> entries);

  std::variant<std::vector<double>, GridFunction> rep_;
};

/// a*u + b*w. Grid functions are combined on the union of their breakpoints,
/// which is exact for piecewise-linear inputs.
Vector linear_combination(double a, const Vector& u, double b, const Vector& w);

class NormedSpace {
 public:
  enum class Kind { Euclidean, SupNormOnK };

  static NormedSpace euclidean(std::size_t dimension);
  static NormedSpace sup_norm_on_unit_interval();
  /// The space a vector naturally belongs to (coordinates -> Euclidean of
  /// matching dimension, grid function -> sup norm on [0, 1]).
  static NormedSpace natural_for(const Vector& v);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }

  bool contains(const Vector& v) const;
  /// Throws RepresentationMismatch unless contains(v).
  void require(const Vector& v) const;

  friend bool operator==(const NormedSpace&, const NormedSpace&) = default;

 private:
  NormedSpace(Kind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  std::size_t dimension_;
};

double norm(const NormedSpace& space, const Vector& v);
double distance(const NormedSpace& space, const Vector& a, const Vector& b);

struct DualCoordinates {
  std::vector<double> coefficients;
};

/// t -> sign * v(t0), a norm-one functional on C([0, 1]).
struct SignedPointMass {
  double location;
  int sign;
};

class Functional {
 public:
  /// dual_norm_bound is the Euclidean length of the coefficients.
  static Functional dual(std::vector<double> coefficients);
  static Functional point_mass(double location, int sign);

  const std::variant<DualCoordinates, SignedPointMass>& representation() const { return rep_; }
  bool is_dual_coordinates() const { return std::holds_alternative<DualCoordinates>(rep_); }
  std::span<const double> coefficients() const;
  const SignedPointMass& point_mass() const;
  double dual_norm_bound() const { return dual_norm_bound_; }

 private:
  Functional(std::variant<DualCoordinates, SignedPointMass> rep, double bound)
      : rep_(std::move(rep)), dual_norm_bound_(bound) {}

  std::variant<DualCoordinates, SignedPointMass> rep_;
  double dual_norm_bound_;
};

/// A norm-one functional g with g(v) = ||v||. Throws DegenerateVector for v = 0.
Functional norming_functional(const NormedSpace& space, const Vector& v);

double apply_functional(const Functional& g, const Vector& v);

}  // namespace farpoint
