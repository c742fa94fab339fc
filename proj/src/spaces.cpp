#include "qpg/spaces.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "qpg/json_util.hpp"

namespace qpg {

DisjointSets::DisjointSets(std::size_t size)
    : parent_(size), rank_(size, 0), components_(size) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  --components_;
  return true;
}

std::vector<std::vector<std::size_t>> DiscreteSpace::neighbours() const {
  std::vector<std::vector<std::size_t>> nb(m + 1);
  for (const auto& [a, b] : edges) {
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  return nb;
}

DiscreteSpace build_interval_space(std::size_t m) {
  if (m < 2) throw StructuralError("interval space needs m >= 2");
  DiscreteSpace s{"interval", m, {}, {}};
  for (std::size_t k = 1; k < m; ++k) s.edges.insert({k, k + 1});
  for (std::size_t k = 0; k < m; ++k) s.labels.push_back(static_cast<double>(k) / static_cast<double>(m - 1));
  return s;
}

DiscreteSpace build_circle_space(std::size_t m) {
  if (m < 3) throw StructuralError("circle space needs m >= 3");
  DiscreteSpace s{"circle", m, {}, {}};
  for (std::size_t k = 1; k < m; ++k) s.edges.insert({k, k + 1});
  s.edges.insert({1, m});
  for (std::size_t k = 0; k < m; ++k)
    s.labels.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
  return s;
}

DiscreteSpace build_custom_space(std::size_t m, const std::vector<Edge>& edges) {
  if (m < 1) throw StructuralError("custom space needs m >= 1");
  DiscreteSpace s{"custom", m, {}, {}};
  for (auto [a, b] : edges) {
    if (a < 1 || a > m || b < 1 || b > m) throw StructuralError("edge index out of range");
    if (a == b) throw StructuralError("self-loops are not allowed");
    s.edges.insert({std::min(a, b), std::max(a, b)});
  }
  return s;
}

std::size_t base_components(const DiscreteSpace& s) {
  DisjointSets ds(s.m);
  for (const auto& [a, b] : s.edges) ds.unite(a - 1, b - 1);
  return ds.count();
}

void validate(const GluingSpec& spec) {
  if (spec.n < 1) throw StructuralError("gluing needs n >= 1");
  if (spec.base.m < 1) throw StructuralError("base space is empty");
  for (auto y : spec.glued)
    if (y < 1 || y > spec.base.m) throw StructuralError("glued index out of range");
  for (const auto& [a, b] : spec.base.edges)
    if (a < 1 || b > spec.base.m || a >= b) throw StructuralError("malformed base edge");
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(std::size_t n, std::size_t m, Complex fill) : n_(n), m_(m), v_(n * m, fill) {
  if (n == 0 || m == 0) throw DimensionError("grid function needs n, m >= 1");
}

GridFunction::GridFunction(std::size_t n, std::size_t m, std::vector<Complex> values)
    : n_(n), m_(m), v_(std::move(values)) {
  if (n == 0 || m == 0) throw DimensionError("grid function needs n, m >= 1");
  if (v_.size() != n * m) throw DimensionError("grid function has wrong number of values");
}

GridFunction GridFunction::fiber_tensor(std::size_t n, std::size_t i, const std::vector<Complex>& f) {
  GridFunction g(n, f.size());
  if (i < 1 || i > n) throw std::out_of_range("fiber index out of range");
  for (std::size_t y = 1; y <= f.size(); ++y) g(i, y) = f[y - 1];
  return g;
}

GridFunction GridFunction::base_lift(std::size_t n, const std::vector<Complex>& f) {
  GridFunction g(n, f.size());
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t y = 1; y <= f.size(); ++y) g(i, y) = f[y - 1];
  return g;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  if (a.n_ != b.n_ || a.m_ != b.m_) throw DimensionError("grid function shapes differ");
  GridFunction out = a;
  for (std::size_t k = 0; k < out.v_.size(); ++k) out.v_[k] *= b.v_[k];
  return out;
}

GridFunction GridFunction::conj() const {
  GridFunction out = *this;
  for (auto& z : out.v_) z = std::conj(z);
  return out;
}

// ---------------------------------------------------------------------------

GluedSpace::GluedSpace(GluingSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  const std::size_t n = spec_.n;
  const std::size_t m = spec_.base.m;
  class_of_.assign(n * m, 0);
  for (std::size_t y = 1; y <= m; ++y) {
    if (is_glued(y)) {
      for (std::size_t i = 1; i <= n; ++i) class_of_[(i - 1) * m + (y - 1)] = classes_.size();
      classes_.push_back({y, std::nullopt});
    } else {
      for (std::size_t i = 1; i <= n; ++i) {
        class_of_[(i - 1) * m + (y - 1)] = classes_.size();
        classes_.push_back({y, i});
      }
    }
  }
  for (const auto& [a, b] : spec_.base.edges)
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t ca = class_of(i, a);
      const std::size_t cb = class_of(i, b);
      if (ca != cb) class_edges_.insert({std::min(ca, cb), std::max(ca, cb)});
    }
}

std::vector<GridFunction> GluedSpace::quotient_basis() const {
  std::vector<GridFunction> basis;
  basis.reserve(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::vector<Complex> coords(classes_.size());
    coords[c] = 1.0;
    basis.push_back(from_class_coords(coords));
  }
  return basis;
}

GridFunction GluedSpace::from_class_coords(const std::vector<Complex>& coords) const {
  if (coords.size() != classes_.size()) throw DimensionError("class coordinate count mismatch");
  GridFunction f(n(), m());
  for (std::size_t i = 1; i <= n(); ++i)
    for (std::size_t y = 1; y <= m(); ++y) f(i, y) = coords[class_of(i, y)];
  return f;
}

std::vector<Complex> GluedSpace::to_class_coords(const GridFunction& f) const {
  if (f.n() != n() || f.m() != m()) throw DimensionError("grid function shape mismatch");
  std::vector<Complex> coords(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c)
    coords[c] = f(classes_[c].fiber.value_or(1), classes_[c].y);
  return coords;
}

GridFunction GluedSpace::project(const GridFunction& f) const {
  if (f.n() != n() || f.m() != m()) throw DimensionError("grid function shape mismatch");
  GridFunction out = f;
  for (auto y : spec_.glued) {
    Complex avg = 0.0;
    for (std::size_t i = 1; i <= n(); ++i) avg += f(i, y);
    avg /= static_cast<double>(n());
    for (std::size_t i = 1; i <= n(); ++i) out(i, y) = avg;
  }
  return out;
}

GluedSpace build_glued_space(const GluingSpec& spec) { return GluedSpace(spec); }

bool is_in_quotient_algebra(const GridFunction& f, const GluingSpec& spec, Tolerance tol) {
  if (f.n() != spec.n || f.m() != spec.base.m) throw DimensionError("grid function shape mismatch");
  for (auto y : spec.glued)
    for (std::size_t i = 2; i <= spec.n; ++i)
      if (std::abs(f(i, y) - f(1, y)) > tol.eps) return false;
  return true;
}

std::size_t connected_components(const GluedSpace& g) {
  DisjointSets ds(g.quotient_dim());
  for (const auto& [a, b] : g.class_adjacency()) ds.unite(a, b);
  return ds.count();
}

nlohmann::json to_json(const GluingSpec& spec) {
  nlohmann::json j;
  j["kind"] = spec.base.kind;
  j["m"] = spec.base.m;
  if (spec.base.kind == "custom") {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : spec.base.edges) edges.push_back({a, b});
    j["edges"] = edges;
  }
  j["glued_indices"] = std::vector<std::size_t>(spec.glued.begin(), spec.glued.end());
  j["n"] = spec.n;
  return j;
}

GluingSpec gluing_from_json(const nlohmann::json& j) {
  try {
    GluingSpec spec;
    const auto kind = j.at("kind").get<std::string>();
    const auto m = detail::read_count(j, "m", 1u << 16);
    if (kind == "interval") {
      spec.base = build_interval_space(m);
    } else if (kind == "circle") {
      spec.base = build_circle_space(m);
    } else if (kind == "custom") {
      std::vector<Edge> edges;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw StructuralError("edge must be [a, b]");
        if (!e[0].is_number_integer() || !e[1].is_number_integer() || e[0].get<long long>() < 1 ||
            e[1].get<long long>() < 1)
          throw StructuralError("edge endpoints must be positive integers");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
      }
      spec.base = build_custom_space(m, edges);
    } else {
      throw StructuralError("unknown space kind '" + kind + "'");
    }
    spec.n = detail::read_count(j, "n", 1u << 10);
    for (const auto& y : j.value("glued_indices", nlohmann::json::array())) {
      if (!y.is_number_integer() || y.get<long long>() < 1)
        throw StructuralError("glued indices must be positive integers");
      spec.glued.insert(y.get<std::size_t>());
    }
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad space JSON: ") + e.what());
  }
}

}  // namespace qpg
