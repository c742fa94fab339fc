#pragma once

// Inner loops of the coaction. Each kernel has a serial reference and an
// OpenMP version over the (k, y) output grid; the two must agree bit for bit
// since every output cell is computed by the same sequence of operations.
//
// Buffer layouts (all row-major, zero-based):
//   f        n × m scalars,            f[i*m + y]
//   entries  n × n blocks of d × d,    entries[(k*n + i)*d*d + r*d + c]
//   values   n × m blocks of d × d,    values[(k*m + y)*d*d + r*d + c]

#include <cstddef>
#include <span>

#include "qpg/numerics.hpp"

namespace qpg::kernels {

struct Shape {
  std::size_t n;
  std::size_t m;
  std::size_t d;
};

namespace serial {

/// values(k, y) = Σ_i f(i, y) · entry(k, i).
void coact(Shape s, std::span<const Complex> f, std::span<const Complex> entries,
           std::span<Complex> values);

/// out(k, y) = Σ_i kron(entry(k, i), values(i, y)); out blocks are d² × d².
void kron_contract(Shape s, std::span<const Complex> entries, std::span<const Complex> values,
                   std::span<Complex> out);

}  // namespace serial

namespace omp {

void coact(Shape s, std::span<const Complex> f, std::span<const Complex> entries,
           std::span<Complex> values);

void kron_contract(Shape s, std::span<const Complex> entries, std::span<const Complex> values,
                   std::span<Complex> out);

}  // namespace omp

}  // namespace qpg::kernels
