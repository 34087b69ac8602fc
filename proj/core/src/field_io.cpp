#include "plap/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace plap {
namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

void put_u64(std::ostream& out, std::uint64_t v) {
  const std::uint64_t le = to_le(v);
  std::array<char, 8> buf{};
  std::memcpy(buf.data(), &le, 8);
  out.write(buf.data(), 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<char, 8> buf{};
  in.read(buf.data(), 8);
  if (in.gcount() != 8) throw std::runtime_error("truncated field file");
  std::uint64_t le = 0;
  std::memcpy(&le, buf.data(), 8);
  return to_le(le);
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_field_binary(std::ostream& out, const SpaceTimeField& field) {
  const Grid& g = field.grid();
  put_u64(out, static_cast<std::uint64_t>(g.dim()));
  put_u64(out, static_cast<std::uint64_t>(g.nx()));
  put_u64(out, static_cast<std::uint64_t>(g.nt()));
  put_f64(out, g.extent());
  put_f64(out, g.dt());
  for (double v : field.values()) put_f64(out, v);
  if (!out) throw std::runtime_error("failed writing field");
}

SpaceTimeField read_field_binary(std::istream& in) {
  const auto dim = get_u64(in);
  const auto nx = get_u64(in);
  const auto nt = get_u64(in);
  const double extent = get_f64(in);
  const double dt = get_f64(in);
  if (dim > 2 || nx > (1u << 20) || nt > (1u << 30)) throw std::runtime_error("corrupt field header");
  const Grid grid(static_cast<int>(dim), extent, static_cast<int>(nx), static_cast<int>(nt), dt);
  std::vector<double> values(grid.size());
  for (double& v : values) v = get_f64(in);
  return SpaceTimeField(grid, std::move(values));
}

void save_field_binary(const std::filesystem::path& path, const SpaceTimeField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_field_binary(out, field);
}

SpaceTimeField load_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_field_binary(in);
}

void write_field_csv(std::ostream& out, const SpaceTimeField& field, std::size_t max_rows) {
  const Grid& g = field.grid();
  if (g.size() > max_rows) throw std::length_error("field too large for CSV export");
  const auto old_precision = out.precision(17);
  out << (g.dim() == 1 ? "t,x,u\n" : "t,x,y,u\n");
  for (int j = 0; j < g.nt(); ++j) {
    for (std::size_t n = 0; n < g.nodes_per_slice(); ++n) {
      const Point p = g.point(n);
      out << g.time(j) << ',' << p[0] << ',';
      if (g.dim() == 2) out << p[1] << ',';
      out << field.at(n, j) << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace plap
