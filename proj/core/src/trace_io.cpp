#include "twinbeam/trace_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

static_assert(std::endian::native == std::endian::little,
              "TBTR I/O assumes a little-endian host");

namespace tbl {

namespace {

constexpr char kMagic[4] = {'T', 'B', 'T', 'R'};

void write_atomic(const std::filesystem::path& path, const std::string& data) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

template <typename T>
void append(std::string& buf, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  buf.append(bytes, sizeof(T));
}

template <typename T>
T read_from(std::ifstream& is, const std::filesystem::path& path) {
  T value;
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw std::runtime_error("truncated trace file: " + path.string());
  }
  return value;
}

}  // namespace

void write_trace(const std::filesystem::path& path,
                 const QuadratureTrace& trace) {
  std::string buf;
  buf.reserve(32 + trace.samples.size() * sizeof(double));
  buf.append(kMagic, 4);
  append<std::uint16_t>(buf, kTraceFormatVersion);
  const double fs = trace.sample_period_s * 1e15;
  append<std::uint64_t>(buf, static_cast<std::uint64_t>(std::llround(fs)));
  append<std::uint64_t>(buf, trace.samples.size());
  append<std::uint8_t>(buf, static_cast<std::uint8_t>(trace.mode));
  append<std::uint8_t>(buf, static_cast<std::uint8_t>(trace.quadrature));
  append<std::uint64_t>(buf, trace.seed_tag);
  const std::size_t head = buf.size();
  buf.resize(head + trace.samples.size() * sizeof(double));
  if (!trace.samples.empty()) {
    std::memcpy(buf.data() + head, trace.samples.data(),
                trace.samples.size() * sizeof(double));
  }
  write_atomic(path, buf);
}

QuadratureTrace read_trace(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open trace file: " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("bad magic in trace file: " + path.string());
  }
  const auto version = read_from<std::uint16_t>(is, path);
  if (version != kTraceFormatVersion) {
    throw std::runtime_error("unsupported trace format version " +
                             std::to_string(version) + ": " + path.string());
  }
  QuadratureTrace trace;
  const auto period_fs = read_from<std::uint64_t>(is, path);
  trace.sample_period_s = static_cast<double>(period_fs) * 1e-15;
  const auto count = read_from<std::uint64_t>(is, path);
  const auto mode = read_from<std::uint8_t>(is, path);
  const auto quad = read_from<std::uint8_t>(is, path);
  if (mode > 2 || quad > 1) {
    throw std::runtime_error("bad mode/quadrature code: " + path.string());
  }
  trace.mode = static_cast<TraceMode>(mode);
  trace.quadrature = static_cast<Quadrature>(quad);
  trace.seed_tag = read_from<std::uint64_t>(is, path);
  trace.samples.resize(count);
  if (count > 0 &&
      !is.read(reinterpret_cast<char*>(trace.samples.data()),
               static_cast<std::streamsize>(count * sizeof(double)))) {
    throw std::runtime_error("truncated trace file: " + path.string());
  }
  return trace;
}

void write_shot(const std::filesystem::path& dir, const ExperimentShot& shot) {
  std::filesystem::create_directories(dir);
  const struct {
    const char* name;
    const QuadratureTrace* trace;
  } entries[] = {{"probe_x.tbtr", &shot.probe_x},
                 {"probe_y.tbtr", &shot.probe_y},
                 {"conj_x.tbtr", &shot.conj_x},
                 {"conj_y.tbtr", &shot.conj_y}};
  nlohmann::json manifest;
  for (const auto& e : entries) {
    write_trace(dir / e.name, *e.trace);
    manifest["traces"][to_string(e.trace->mode)][to_string(e.trace->quadrature)] =
        e.name;
  }
  manifest["squeezed_joint"] = to_string(shot.squeezed_joint);
  manifest["config_digest"] = shot.config_digest;
  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

ExperimentShot read_shot(const std::filesystem::path& dir) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw std::runtime_error("missing manifest: " + dir.string());
  nlohmann::json manifest;
  try {
    is >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad manifest in " + dir.string() + ": " + e.what());
  }
  ExperimentShot shot;
  auto load = [&](const char* mode, const char* quad) {
    const std::string name = manifest.at("traces").at(mode).at(quad);
    return read_trace(dir / name);
  };
  shot.probe_x = load("probe", "x");
  shot.probe_y = load("probe", "y");
  shot.conj_x = load("conjugate", "x");
  shot.conj_y = load("conjugate", "y");
  const std::string joint = manifest.at("squeezed_joint");
  shot.squeezed_joint =
      joint == "y_plus" ? SqueezedJoint::YPlus : SqueezedJoint::XMinus;
  shot.config_digest = manifest.value("config_digest", "");
  const std::size_t n = shot.probe_x.size();
  if (shot.probe_y.size() != n || shot.conj_x.size() != n ||
      shot.conj_y.size() != n) {
    throw std::runtime_error("shot traces disagree in length: " + dir.string());
  }
  return shot;
}

}  // namespace tbl
