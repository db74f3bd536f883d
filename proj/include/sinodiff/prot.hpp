#pragma once

#include <filesystem>
#include <vector>

#include "sinodiff/tensor.hpp"

namespace sinodiff {

/// PROT tensor file: magic "PROT", version u8=1, dtype u8 (1 = float32
/// little-endian), rank u16 LE, rank x u32 LE dims, then the row-major
/// payload. Write-then-read is bit-identical.
void write_prot(const std::filesystem::path& path, const TensorF& tensor);
TensorF read_prot(const std::filesystem::path& path);

/// Convenience for double-precision producers; payload is stored as float32.
void write_prot(const std::filesystem::path& path, const std::vector<int>& shape,
                const std::vector<double>& values);

}  // namespace sinodiff
