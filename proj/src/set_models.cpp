#include "farpoint/set_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "farpoint/error.hpp"

namespace farpoint {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Distance from t to the complement of U_n = (0, 1/n) inside [0, 1].
double distance_to_complement(double t, double width) {
  if (t <= 0.0 || t >= width) return 0.0;
  return std::min(t, width - t);
}

double ck_value(std::size_t n, double t) {
  const double width = 1.0 / static_cast<double>(n);
  const double center = 0.5 * width;
  const double outside = distance_to_complement(t, width);
  if (outside == 0.0) return 0.0;
  return outside / (std::abs(t - center) + outside);
}

double max_abs(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

CompactSetModel CompactSetModel::finite(std::vector<Vector> points) {
  std::optional<double> a;
  if (!points.empty()) {
    const NormedSpace space = NormedSpace::natural_for(points.front());
    double m = 0.0;
    for (const Vector& p : points) {
      if (!space.contains(p)) {
        throw Error(ErrorCode::RepresentationMismatch, "finite set points must share one representation");
      }
      m = std::max(m, norm(space, p));
    }
    a = m;
  }
  return CompactSetModel(FiniteSet{std::move(points)}, a, {});
}

CompactSetModel CompactSetModel::sequence(SequenceWithLimit sequence) {
  if (!sequence.element_rule || !sequence.tail_value_bound) {
    throw Error(ErrorCode::InvalidParameter, "sequence model needs an element rule and a tail bound");
  }
  if (sequence.length == 0 && sequence.limit_points.empty()) {
    throw Error(ErrorCode::EmptySet, "sequence model has nothing to enumerate");
  }
  double m = sequence.norm_bound;
  for (std::size_t n = 1; n <= sequence.length; ++n) {
    const Vector z = sequence.element_rule(n);
    m = std::max(m, norm(NormedSpace::natural_for(z), z));
  }
  for (const Vector& z : sequence.limit_points) m = std::max(m, norm(NormedSpace::natural_for(z), z));
  std::vector<Vector> limits = sequence.limit_points;
  return CompactSetModel(std::move(sequence), m, std::move(limits));
}

std::size_t CompactSetModel::size() const {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSet>) return v.points.size();
        else if constexpr (std::is_same_v<T, SequenceWithLimit>) return v.length;
        else return v.n_max;
      },
      variant_);
}

std::span<const Vector> CompactSetModel::limit_points() const { return limits_; }

Vector element(const CompactSetModel& model, std::size_t n) {
  const std::size_t first = model.first_index();
  if (n < first || n - first >= model.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "element index " + std::to_string(n) + " out of range");
  }
  return std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return v.points[n];
        } else if constexpr (std::is_same_v<T, SequenceWithLimit>) {
          return v.element_rule(n);
        } else {
          const double scale = 1.0 - 1.0 / static_cast<double>(n);
          return scale * Vector(ck_bump(n, v.extra_grid_points));
        }
      },
      model.variant());
}

double alpha(const CompactSetModel& model) {
  if (!model.alpha_cache()) throw Error(ErrorCode::EmptySet, "alpha of an empty set");
  return *model.alpha_cache();
}

double objective_tail_bound(const CompactSetModel& model, const NormedSpace& space,
                            const Perturbation& f, const Vector& x, std::size_t N) {
  if (N < 1) throw Error(ErrorCode::InvalidParameter, "tail bound needs N >= 1");
  space.require(x);

  if (const auto* fs = std::get_if<FiniteSet>(&model.variant())) {
    double best = kNegInf;
    for (std::size_t i = N; i < fs->points.size(); ++i) {
      best = std::max(best, objective(space, f, x, fs->points[i]));
    }
    return best;
  }
  if (const auto* seq = std::get_if<SequenceWithLimit>(&model.variant())) {
    return seq->tail_value_bound(x, f, N);
  }

  // CK family. Every element satisfies 0 <= z <= 1 - 1/n < 1 pointwise.
  // ||x - z|| - ||z|| <= ||x|| holds for any x; when x >= 1 pointwise we also
  // get ||x - z|| = sup (x - z) <= ||x||, which covers f = 0 and, since
  // f(z) = 1 - ||z|| on C, the f_x(z) = ||x - z|| + ||z|| < ||x|| + 1 bound.
  const double x_norm = norm(space, x);
  switch (f.kind()) {
    case Perturbation::Kind::NormOf:
      return x_norm - f.offset();
    case Perturbation::Kind::Zero:
    case Perturbation::Kind::OneMinusNormPlus:
      if (x.function().min_value() >= 1.0) return x_norm - f.offset();
      break;
    case Perturbation::Kind::PairIndicator:
      break;
  }
  throw Error(ErrorCode::UnsupportedCombination,
              "no tail bound registered for the CK family with f = " + f.name() +
                  " at this x; enlarge N instead");
}

GridFunction ck_bump(std::size_t n, std::span<const double> extra_grid_points) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "CK index must be >= 1");
  const double width = 1.0 / static_cast<double>(n);
  std::vector<double> ts{0.0, 0.5 * width, width, 1.0};
  ts.insert(ts.end(), extra_grid_points.begin(), extra_grid_points.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> vs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) vs[i] = ck_value(n, ts[i]);
  return GridFunction(std::move(ts), std::move(vs));
}

CompactSetModel build_ck_family(std::size_t n_max, std::vector<double> extra_grid_points) {
  if (n_max < 2) throw Error(ErrorCode::InvalidParameter, "CK family needs n_max >= 2");
  for (double t : extra_grid_points) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidParameter, "grid point outside [0, 1]");
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    const GridFunction bump = ck_bump(n, extra_grid_points);
    const double width = 1.0 / static_cast<double>(n);
    if (max_abs(bump.values()) != 1.0 || bump(0.5 * width) != 1.0) {
      throw Error(ErrorCode::InvalidParameter, "x_" + std::to_string(n) + " does not have norm 1");
    }
    for (std::size_t i = 0; i < bump.size(); ++i) {
      const double t = bump.breakpoints()[i];
      if ((t <= 0.0 || t >= width) && bump.values()[i] != 0.0) {
        throw Error(ErrorCode::InvalidParameter, "x_" + std::to_string(n) + " does not vanish off U_n");
      }
    }
  }
  std::vector<Vector> limits{Vector(GridFunction::constant(0.0))};
  return CompactSetModel(CKFamily{n_max, std::move(extra_grid_points)}, 1.0, std::move(limits));
}

CompactSetModel load_finite_set_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("finite set JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("points")) {
    throw Error(ErrorCode::InvalidParameter, "finite set JSON needs \"dimension\" and \"points\"");
  }
  if (!doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1) {
    throw Error(ErrorCode::InvalidParameter, "\"dimension\" must be a positive integer");
  }
  const auto d = doc["dimension"].get<std::size_t>();
  if (!doc["points"].is_array()) throw Error(ErrorCode::InvalidParameter, "\"points\" must be an array");
  std::vector<Vector> points;
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != d) {
      throw Error(ErrorCode::InvalidParameter, "every point must be an array of length " + std::to_string(d));
    }
    std::vector<double> c;
    for (const auto& v : p) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidParameter, "point entries must be numbers");
      c.push_back(v.get<double>());
    }
    points.push_back(Vector::coordinates(std::move(c)));
  }
  return CompactSetModel::finite(std::move(points));
}

}  // namespace farpoint
