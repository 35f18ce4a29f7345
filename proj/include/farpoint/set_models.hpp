#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "farpoint/perturbation.hpp"
#include "farpoint/space.hpp"

namespace farpoint {

/// Elements are indexed 0 .. size-1.
struct FiniteSet {
  std::vector<Vector> points;
};

/// An infinite sequence z_1, z_2, ... given by a rule, together with its
/// limit points and a caller-supplied bound on the objective over the tail.
struct SequenceWithLimit {
  std::function<Vector(std::size_t)> element_rule;
  /// Number of elements that may be enumerated (indices 1 .. length).
  std::size_t length = 0;
  std::vector<Vector> limit_points;
  /// (x, f, N) -> upper bound on ||x - z_n|| - f(z_n) over n > N.
  std::function<double(const Vector&, const Perturbation&, std::size_t)> tail_value_bound;
  /// Analytic bound on sup ||z_n||.
  double norm_bound = 0.0;
};

/// The family C = {(1 - 1/n) x_n : n >= 1} in C([0, 1]) with
/// U_n = (0, 1/n), t_n = 1/(2n) and
/// x_n(t) = d(t, U_n^c) / (d(t, t_n) + d(t, U_n^c)).
/// Elements are indexed 1 .. n_max; element 1 is the zero function.
struct CKFamily {
  std::size_t n_max = 0;
  std::vector<double> extra_grid_points;
};

class CompactSetModel {
 public:
  using Variant = std::variant<FiniteSet, SequenceWithLimit, CKFamily>;

  static CompactSetModel finite(std::vector<Vector> points);
  static CompactSetModel sequence(SequenceWithLimit sequence);

  const Variant& variant() const { return variant_; }
  bool is_finite() const { return std::holds_alternative<FiniteSet>(variant_); }
  bool is_ck_family() const { return std::holds_alternative<CKFamily>(variant_); }

  /// Index of the first enumerated element: 0 for finite sets, 1 otherwise.
  std::size_t first_index() const { return is_finite() ? 0 : 1; }
  /// Number of elements available for enumeration.
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::span<const Vector> limit_points() const;
  /// Sup of element norms, if the model is nonempty.
  std::optional<double> alpha_cache() const { return alpha_cache_; }

 private:
  friend CompactSetModel build_ck_family(std::size_t, std::vector<double>);

  CompactSetModel(Variant v, std::optional<double> alpha, std::vector<Vector> limits)
      : variant_(std::move(v)), alpha_cache_(alpha), limits_(std::move(limits)) {}

  Variant variant_;
  std::optional<double> alpha_cache_;
  std::vector<Vector> limits_;
};

/// Throws IndexOutOfRange outside first_index() .. first_index()+size()-1.
Vector element(const CompactSetModel& model, std::size_t n);

/// sup ||z|| over C. Throws EmptySet.
double alpha(const CompactSetModel& model);

/// Upper bound on ||x - z|| - f(z) over the elements after the first N
/// enumerated ones; -infinity when that tail is empty. Infinite models only
/// answer for registered (model, perturbation, x-class) combinations and
/// throw UnsupportedCombination otherwise.
double objective_tail_bound(const CompactSetModel& model, const NormedSpace& space,
                            const Perturbation& f, const Vector& x, std::size_t N);

/// x_n as a grid function whose breakpoints contain 0, t_n, 1/n, 1 and the
/// given extra points.
GridFunction ck_bump(std::size_t n, std::span<const double> extra_grid_points = {});

CompactSetModel build_ck_family(std::size_t n_max, std::vector<double> extra_grid_points = {});

/// Parses { "dimension": d, "points": [[...], ...] }. Throws InvalidParameter.
CompactSetModel load_finite_set_json(std::string_view text);

}  // namespace farpoint
