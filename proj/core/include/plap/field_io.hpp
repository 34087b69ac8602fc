#pragma once

#include <filesystem>
#include <iosfwd>

#include "plap/grid.hpp"

namespace plap {

// Binary layout, all little-endian 64-bit:
//   u64 dim, u64 nx, u64 nt, f64 extent, f64 dt, then nt * nx^dim f64 values,
//   slice by slice, x fastest within a slice.
void write_field_binary(std::ostream& out, const SpaceTimeField& field);
[[nodiscard]] SpaceTimeField read_field_binary(std::istream& in);

void save_field_binary(const std::filesystem::path& path, const SpaceTimeField& field);
[[nodiscard]] SpaceTimeField load_field_binary(const std::filesystem::path& path);

/// CSV with header `t,x,u` (1D) or `t,x,y,u` (2D), one row per node.
/// Throws std::length_error for fields with more than `max_rows` nodes.
void write_field_csv(std::ostream& out, const SpaceTimeField& field, std::size_t max_rows = 1'000'000);

}  // namespace plap
