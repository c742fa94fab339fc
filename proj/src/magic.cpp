#include "qpg/magic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpg/json_util.hpp"

namespace qpg {

MagicUnitary::MagicUnitary(std::size_t n, std::size_t d, std::vector<ComplexMatrix> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  if (n == 0 || d == 0) throw StructuralError("magic unitary needs n >= 1 and d >= 1");
  if (entries_.size() != n * n)
    throw StructuralError("magic unitary needs n*n entries, got " + std::to_string(entries_.size()));
  for (const auto& e : entries_) {
    if (e.rows() != d || e.cols() != d)
      throw StructuralError("magic unitary entry is not " + std::to_string(d) + "x" +
                            std::to_string(d));
  }
}

const ComplexMatrix& MagicUnitary::entry(std::size_t i, std::size_t j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("generator index out of range");
  return entries_[(i - 1) * n_ + (j - 1)];
}

CheckReport verify_magic_unitary(const MagicUnitary& u, Tolerance tol) {
  const std::size_t n = u.n();
  const auto id = ComplexMatrix::identity(u.d());

  double proj = 0.0, row = 0.0, col = 0.0, orth = 0.0;
  nlohmann::json worst_proj, worst_row, worst_col, worst_orth;

  auto bump = [](double v, double& best, nlohmann::json& where, nlohmann::json at) {
    if (v > best) {
      best = v;
      where = std::move(at);
    }
  };

  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const auto& a = u.entry(i, j);
      const double v = std::max(max_diff(a, a.adjoint()), max_diff(a * a, a));
      bump(v, proj, worst_proj, {{"i", i}, {"j", j}});
    }

  for (std::size_t i = 1; i <= n; ++i) {
    auto rs = ComplexMatrix::zero(u.d(), u.d());
    auto cs = rs;
    for (std::size_t j = 1; j <= n; ++j) {
      rs = rs + u.entry(i, j);
      cs = cs + u.entry(j, i);
    }
    bump(max_diff(rs, id), row, worst_row, {{"row", i}});
    bump(max_diff(cs, id), col, worst_col, {{"column", i}});
  }

  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) {
        if (k == j) continue;
        bump(max_norm(u.entry(i, j) * u.entry(i, k)), orth, worst_orth,
             {{"kind", "row"}, {"i", i}, {"j", j}, {"k", k}});
        bump(max_norm(u.entry(j, i) * u.entry(k, i)), orth, worst_orth,
             {{"kind", "column"}, {"i", j}, {"k", k}, {"j", i}});
      }

  CheckReport r;
  r.check = "magic";
  r.tolerance = tol.eps;
  r.metrics = {{"n", n},
               {"d", u.d()},
               {"projection_violation", proj},
               {"row_sum_violation", row},
               {"column_sum_violation", col},
               {"orthogonality_violation", orth},
               {"max_violation", std::max({proj, row, col, orth})}};
  r.worst_case = nlohmann::json::object();
  if (!worst_proj.is_null()) r.worst_case["projection"] = worst_proj;
  if (!worst_row.is_null()) r.worst_case["row_sum"] = worst_row;
  if (!worst_col.is_null()) r.worst_case["column_sum"] = worst_col;
  if (!worst_orth.is_null()) r.worst_case["orthogonality"] = worst_orth;
  r.pass = proj <= tol.eps && row <= tol.eps && col <= tol.eps && orth <= tol.eps;
  return r;
}

MagicUnitary delta_rep(const MagicUnitary& u) {
  const std::size_t n = u.n();
  const std::size_t d2 = u.d() * u.d();
  std::vector<ComplexMatrix> out;
  out.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      auto acc = ComplexMatrix::zero(d2, d2);
      for (std::size_t k = 1; k <= n; ++k) acc = acc + kron(u.entry(i, k), u.entry(k, j));
      out.push_back(std::move(acc));
    }
  return {n, d2, std::move(out)};
}

MagicUnitary build_two_projection_magic(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const auto p = ComplexMatrix::diag({1.0, 0.0});
  const ComplexMatrix q{{c * c, c * s}, {c * s, s * s}};
  const auto id = ComplexMatrix::identity(2);
  const auto z = ComplexMatrix::zero(2, 2);
  const auto pc = id - p;
  const auto qc = id - q;
  return {4, 2, {p, pc, z, z, pc, p, z, z, z, z, q, qc, z, z, qc, q}};
}

MagicUnitary permutation_magic(const std::vector<std::size_t>& sigma) {
  const std::size_t n = sigma.size();
  if (n == 0) throw StructuralError("permutation must be nonempty");
  std::vector<bool> seen(n + 1, false);
  for (auto s : sigma) {
    if (s < 1 || s > n || seen[s]) throw StructuralError("not a permutation of 1..n");
    seen[s] = true;
  }
  std::vector<ComplexMatrix> out;
  out.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      out.push_back(ComplexMatrix{{sigma[j - 1] == i ? 1.0 : 0.0}});
  return {n, 1, std::move(out)};
}

MagicUnitary direct_sum(const MagicUnitary& a, const MagicUnitary& b) {
  if (a.n() != b.n()) throw DimensionError("direct_sum: n differs");
  const std::size_t d = a.d() + b.d();
  std::vector<ComplexMatrix> out;
  out.reserve(a.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    std::vector<Complex> m(d * d);
    const auto& x = a.entries()[k];
    const auto& y = b.entries()[k];
    for (std::size_t r = 0; r < a.d(); ++r)
      for (std::size_t c = 0; c < a.d(); ++c) m[r * d + c] = x(r, c);
    for (std::size_t r = 0; r < b.d(); ++r)
      for (std::size_t c = 0; c < b.d(); ++c) m[(a.d() + r) * d + a.d() + c] = y(r, c);
    out.emplace_back(d, d, std::move(m));
  }
  return {a.n(), d, std::move(out)};
}

MagicUnitary conjugate(const MagicUnitary& u, const ComplexMatrix& w) {
  if (w.rows() != u.d() || w.cols() != u.d()) throw DimensionError("conjugate: w must be d x d");
  const auto wa = w.adjoint();
  std::vector<ComplexMatrix> out;
  out.reserve(u.entries().size());
  for (const auto& e : u.entries()) out.push_back(w * e * wa);
  return {u.n(), u.d(), std::move(out)};
}

MagicUnitary permute_grid(const MagicUnitary& u, const std::vector<std::size_t>& row_perm,
                          const std::vector<std::size_t>& col_perm) {
  const std::size_t n = u.n();
  if (row_perm.size() != n || col_perm.size() != n) throw DimensionError("permute_grid: size");
  std::vector<ComplexMatrix> out;
  out.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) out.push_back(u.entry(row_perm[i - 1], col_perm[j - 1]));
  return {n, u.d(), std::move(out)};
}

double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y) {
  return operator_norm(x * y - y * x);
}

std::optional<GenuinenessCertificate> genuineness_certificate(const MagicUnitary& u,
                                                              double threshold) {
  const std::size_t n = u.n();
  std::optional<GenuinenessCertificate> best;
  if (u.d() == 1) return best;
  double best_norm = -1.0;
  for (std::size_t a = 0; a < n * n; ++a)
    for (std::size_t b = a + 1; b < n * n; ++b) {
      const double c = commutator_norm(u.entries()[a], u.entries()[b]);
      if (c > best_norm + 1e-12) {
        best_norm = c;
        best = GenuinenessCertificate{{a / n + 1, a % n + 1}, {b / n + 1, b % n + 1}, c};
      }
    }
  if (!best || best->commutator_norm <= threshold) return std::nullopt;
  return best;
}

nlohmann::json to_json(const MagicUnitary& u) {
  nlohmann::json grid = nlohmann::json::array();
  for (std::size_t i = 1; i <= u.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 1; j <= u.n(); ++j) row.push_back(to_json(u.entry(i, j)));
    grid.push_back(std::move(row));
  }
  return {{"n", u.n()}, {"d", u.d()}, {"entries", std::move(grid)}};
}

MagicUnitary magic_from_json(const nlohmann::json& j) {
  try {
    const auto n = detail::read_count(j, "n", 1u << 10);
    const auto d = detail::read_count(j, "d", 1u << 8);
    const auto& grid = j.at("entries");
    if (!grid.is_array() || grid.size() != n) throw StructuralError("entries must have n rows");
    std::vector<ComplexMatrix> out;
    for (const auto& row : grid) {
      if (!row.is_array() || row.size() != n) throw StructuralError("entries row must have n items");
      for (const auto& m : row) out.push_back(matrix_from_json(m));
    }
    return {n, d, std::move(out)};
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad magic unitary JSON: ") + e.what());
  }
}

}  // namespace qpg
