#pragma once

#include <filesystem>

#include "twinbeam/trace.hpp"

// Binary trace files ("TBTR") and shot directories. All multi-byte fields
// little-endian; writes are atomic (temp file then rename).

namespace tbl {

inline constexpr std::uint16_t kTraceFormatVersion = 1;

void write_trace(const std::filesystem::path& path,
                 const QuadratureTrace& trace);

// Throws std::runtime_error on bad magic, unsupported version or truncation.
QuadratureTrace read_trace(const std::filesystem::path& path);

// A shot directory holds one TBTR file per trace plus manifest.json naming
// them along with the squeezed joint label and the config digest.
void write_shot(const std::filesystem::path& dir, const ExperimentShot& shot);
ExperimentShot read_shot(const std::filesystem::path& dir);

}  // namespace tbl
