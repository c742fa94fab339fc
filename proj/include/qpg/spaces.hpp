#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpg/numerics.hpp"

namespace qpg {

/// Union-find over 0..size-1 with path compression and union by rank.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size);

  std::size_t find(std::size_t x);
  bool unite(std::size_t x, std::size_t y);
  std::size_t count() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
  std::size_t components_;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite model of the base space Y: m points (one-based) and a symmetric
/// adjacency given as edges with first < second.
struct DiscreteSpace {
  std::string kind;  // "interval", "circle" or "custom"
  std::size_t m = 0;
  std::set<Edge> edges;
  std::vector<double> labels;  // empty for custom spaces

  std::vector<std::vector<std::size_t>> neighbours() const;
};

DiscreteSpace build_interval_space(std::size_t m);
DiscreteSpace build_circle_space(std::size_t m);
/// Edges are normalized to (min, max); self-loops and out-of-range indices
/// are rejected.
DiscreteSpace build_custom_space(std::size_t m, const std::vector<Edge>& edges);

/// Number of connected components of the base graph itself.
std::size_t base_components(const DiscreteSpace& s);

struct GluingSpec {
  std::size_t n = 1;
  DiscreteSpace base;
  std::set<std::size_t> glued;  // Y_1 as one-based base indices
};

/// Checks n ≥ 1 and glued ⊆ {1..m}.
void validate(const GluingSpec& spec);

/// A point class of X_n × Y/∼: either the single point (fiber, y) with y ∉ Y_1
/// or the whole fiber over y ∈ Y_1 (fiber empty).
struct PointClass {
  std::size_t y = 0;
  std::optional<std::size_t> fiber;

  bool glued() const { return !fiber.has_value(); }
};

/// Complex function on X_n × Y given as an n × m grid, one-based access.
class GridFunction {
 public:
  GridFunction(std::size_t n, std::size_t m, Complex fill = 0.0);
  GridFunction(std::size_t n, std::size_t m, std::vector<Complex> values);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  Complex& operator()(std::size_t i, std::size_t y) { return v_[(i - 1) * m_ + (y - 1)]; }
  const Complex& operator()(std::size_t i, std::size_t y) const { return v_[(i - 1) * m_ + (y - 1)]; }
  const std::vector<Complex>& values() const { return v_; }

  /// e_i ⊗ f.
  static GridFunction fiber_tensor(std::size_t n, std::size_t i, const std::vector<Complex>& f);
  /// 1 ⊗ f.
  static GridFunction base_lift(std::size_t n, const std::vector<Complex>& f);

  friend GridFunction operator*(const GridFunction& a, const GridFunction& b);  // pointwise
  GridFunction conj() const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Complex> v_;
};

class GluedSpace {
 public:
  explicit GluedSpace(GluingSpec spec);

  const GluingSpec& spec() const { return spec_; }
  std::size_t n() const { return spec_.n; }
  std::size_t m() const { return spec_.base.m; }
  const std::vector<PointClass>& classes() const { return classes_; }
  const std::set<Edge>& class_adjacency() const { return class_edges_; }
  std::size_t quotient_dim() const { return classes_.size(); }
  bool is_glued(std::size_t y) const { return spec_.glued.contains(y); }
  /// Zero-based class index of the point (i, y).
  std::size_t class_of(std::size_t i, std::size_t y) const { return class_of_[(i - 1) * m() + (y - 1)]; }

  /// Indicator functions of the classes, in class order. They span the
  /// quotient algebra.
  std::vector<GridFunction> quotient_basis() const;
  /// Embeds per-class coordinates as a grid function.
  GridFunction from_class_coords(const std::vector<Complex>& coords) const;
  /// Per-class values read at each class's first point (i = 1 for glued).
  std::vector<Complex> to_class_coords(const GridFunction& f) const;
  /// Replaces values over each glued base point by their fiber average.
  GridFunction project(const GridFunction& f) const;

 private:
  GluingSpec spec_;
  std::vector<PointClass> classes_;
  std::vector<std::size_t> class_of_;
  std::set<Edge> class_edges_;
};

GluedSpace build_glued_space(const GluingSpec& spec);

/// True iff F is constant along every glued fiber within eps.
bool is_in_quotient_algebra(const GridFunction& f, const GluingSpec& spec, Tolerance tol = {});

std::size_t connected_components(const GluedSpace& g);

/// Space file format: {"kind", "m", "edges" (custom only), "glued_indices", "n"}.
nlohmann::json to_json(const GluingSpec& spec);
GluingSpec gluing_from_json(const nlohmann::json& j);

}  // namespace qpg
