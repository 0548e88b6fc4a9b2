#pragma once

#include <cstdint>
#include <string_view>

#include "cskge/types.hpp"
#include "cskge/vector_table.hpp"

namespace cskge {

enum class AlignMethod { Truncate, PadZero, RandomProjection };

const char* align_method_name(AlignMethod m);
AlignMethod parse_align_method(std::string_view name);

// Seeded Gaussian matrix with entries N(0, 1)/sqrt(out_dim), filled row by row.
Matrix gaussian_projection(Index in_dim, Index out_dim, std::uint64_t seed);

// Brings every vector to dimension k. Equal dimensions pass through unchanged
// for every method; truncate cannot grow and pad_zero cannot shrink.
VectorTable align_dimension(const VectorTable& table, Index k, AlignMethod method,
                            std::uint64_t seed = 0);

}  // namespace cskge
