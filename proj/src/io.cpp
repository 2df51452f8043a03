#include "parspec/io.hpp"

#include "parspec/error.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace parspec {

namespace {

constexpr char kMagic[8] = {'P', 'S', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put_le(std::string& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) raise(ErrorCode::IoError, "field file truncated");
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::filesystem::path sidecar(const std::filesystem::path& p) { return p.string() + ".json"; }

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string("fnv1a64:") + buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) raise(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) raise(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_field(const std::filesystem::path& path, const Field& f, const nlohmann::json& meta) {
  f.grid.validate();
  std::string out(kMagic, sizeof kMagic);
  put_le<std::int32_t>(out, f.grid.dim);
  for (int a = 0; a < 3; ++a) put_le<std::int32_t>(out, f.grid.points[a]);
  for (int a = 0; a < 3; ++a) put_le<double>(out, f.grid.length[a]);
  put_le<std::int32_t>(out, f.components);
  put_le<std::int32_t>(out, 0);
  const std::size_t header = out.size();
  out.reserve(header + f.grid.size() * f.components * sizeof(double));
  for (int c = 0; c < f.components; ++c)
    for (double v : f[c]) put_le<double>(out, v);

  nlohmann::json side = {
      {"format", "PSFIELD1"},
      {"dim", f.grid.dim},
      {"points", f.grid.points},
      {"length", f.grid.length},
      {"components", f.components},
      {"layout", "row-major"},
      {"endianness", "little"},
      {"support", support_name(f.support)},
      {"payload_hash", hash_hex(std::string_view(out).substr(header))},
      {"meta", meta},
  };
  write_file_atomic(path, out);
  write_file_atomic(sidecar(path), side.dump(2) + "\n");
}

Field read_field(const std::filesystem::path& path) {
  const std::string in = read_file(path);
  if (in.size() < sizeof kMagic || std::memcmp(in.data(), kMagic, sizeof kMagic) != 0)
    raise(ErrorCode::IoError, path.string() + " is not a field file");
  std::size_t pos = sizeof kMagic;
  Grid g;
  g.dim = get_le<std::int32_t>(in, pos);
  for (int a = 0; a < 3; ++a) g.points[a] = get_le<std::int32_t>(in, pos);
  for (int a = 0; a < 3; ++a) g.length[a] = get_le<double>(in, pos);
  const int comps = get_le<std::int32_t>(in, pos);
  const int layout = get_le<std::int32_t>(in, pos);
  if (layout != 0) raise(ErrorCode::IoError, "unsupported field layout");
  try {
    g.validate();
  } catch (const Error& e) {
    raise(ErrorCode::IoError, std::string("bad field header: ") + e.what());
  }
  if (comps < 1) raise(ErrorCode::IoError, "bad component count");
  if (in.size() != pos + g.size() * comps * sizeof(double))
    raise(ErrorCode::IoError, "field payload size does not match header");
  Field f(g, comps);
  for (int c = 0; c < comps; ++c)
    for (auto& v : f[c]) v = get_le<double>(in, pos);
  return f;
}

nlohmann::json read_field_sidecar(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(sidecar(path)));
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::IoError, std::string("bad sidecar: ") + e.what());
  }
}

}  // namespace parspec
