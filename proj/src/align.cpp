#include "cskge/align.hpp"

#include <cmath>

#include "cskge/error.hpp"
#include "cskge/rng.hpp"

namespace cskge {

const char* align_method_name(AlignMethod m) {
  switch (m) {
    case AlignMethod::Truncate: return "truncate";
    case AlignMethod::PadZero: return "pad_zero";
    case AlignMethod::RandomProjection: return "random_projection";
  }
  return "?";
}

AlignMethod parse_align_method(std::string_view name) {
  if (name == "truncate") return AlignMethod::Truncate;
  if (name == "pad_zero") return AlignMethod::PadZero;
  if (name == "random_projection") return AlignMethod::RandomProjection;
  throw_error(ErrorCategory::Config, "unknown align method: " + std::string(name));
}

Matrix gaussian_projection(Index in_dim, Index out_dim, std::uint64_t seed) {
  if (in_dim <= 0 || out_dim <= 0)
    throw_error(ErrorCategory::Domain, "projection dimensions must be positive");
  Rng rng(seed);
  const Real root_k = std::sqrt(static_cast<Real>(out_dim));
  Matrix g(in_dim, out_dim);
  for (Index i = 0; i < in_dim; ++i)
    for (Index j = 0; j < out_dim; ++j) g(i, j) = rng.normal() / root_k;
  return g;
}

VectorTable align_dimension(const VectorTable& table, Index k, AlignMethod method,
                            std::uint64_t seed) {
  if (k <= 0) throw_error(ErrorCategory::Config, "target dimension must be positive");
  const Index d = table.dim();
  if (table.empty() || d == k) {
    VectorTable out(k);
    for (int i = 0; i < table.size(); ++i) out.insert(table.key(i), table.row(i));
    return out;
  }

  VectorTable out(k);
  switch (method) {
    case AlignMethod::Truncate: {
      if (d < k)
        throw_error(ErrorCategory::Domain, "cannot truncate dimension " + std::to_string(d) +
                                               " up to " + std::to_string(k));
      for (int i = 0; i < table.size(); ++i) out.insert(table.key(i), table.row(i).head(k));
      break;
    }
    case AlignMethod::PadZero: {
      if (d > k)
        throw_error(ErrorCategory::Domain, "cannot pad dimension " + std::to_string(d) +
                                               " down to " + std::to_string(k));
      RowVector v = RowVector::Zero(k);
      for (int i = 0; i < table.size(); ++i) {
        v.head(d) = table.row(i);
        out.insert(table.key(i), v);
      }
      break;
    }
    case AlignMethod::RandomProjection: {
      Matrix g = gaussian_projection(d, k, seed);
      for (int i = 0; i < table.size(); ++i) out.insert(table.key(i), table.row(i) * g);
      break;
    }
  }
  return out;
}

}  // namespace cskge
