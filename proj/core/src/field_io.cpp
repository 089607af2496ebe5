#include "fracpm/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

}  // namespace

std::string encode_field(const ScalarField& f, double epsilon, const std::string& kind) {
  nlohmann::ordered_json h;
  h["dim"] = f.grid().dim();
  h["n"] = f.grid().n();
  h["epsilon"] = epsilon;
  h["kind"] = kind;
  h["byte_order"] = "LE";
  h["dtype"] = "f64";
  std::string out = h.dump();
  out.push_back('\n');
  const auto header = out.size();
  out.resize(header + 8 * f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto bits = to_le(std::bit_cast<std::uint64_t>(f[i]));
    std::memcpy(out.data() + header + 8 * i, &bits, 8);
  }
  return out;
}

void write_field(const std::filesystem::path& path, const ScalarField& f, double epsilon, const std::string& kind) {
  write_atomic(path, encode_field(f, epsilon, kind));
}

LoadedField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open field file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Config, "field file has no header: " + path.string());
  FieldHeader h;
  try {
    const auto j = nlohmann::json::parse(line);
    if (j.at("byte_order") != "LE" || j.at("dtype") != "f64") {
      throw Error(ErrorKind::Config, "unsupported field encoding in " + path.string());
    }
    h.dim = j.at("dim").get<int>();
    h.n = j.at("n").get<std::size_t>();
    h.epsilon = j.at("epsilon").get<double>();
    h.kind = j.at("kind").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, "bad field header in " + path.string() + ": " + e.what());
  }
  const PeriodicGrid grid(h.dim, h.n);
  std::vector<double> v(grid.size());
  for (auto& x : v) {
    std::uint64_t bits;
    if (!in.read(reinterpret_cast<char*>(&bits), 8)) {
      throw Error(ErrorKind::Config, "truncated field payload in " + path.string());
    }
    x = std::bit_cast<double>(to_le(bits));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::Config, "trailing bytes after field payload in " + path.string());
  }
  return {h, ScalarField(grid, std::move(v))};
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::Config, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_table(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
    out << "\r\n";
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    rows.push_back({format_double(traj.times[i]), format_double(traj.l2_w[i]), format_double(traj.linf_u[i]),
                    format_double(traj.mean_u[i]), format_double(traj.energy[i])});
  }
  return csv_table({"t", "l2_w", "linf_u", "mean_u", "energy"}, rows);
}

}  // namespace fracpm
