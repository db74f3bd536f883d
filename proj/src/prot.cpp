#include "sinodiff/prot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "sinodiff/errors.hpp"

namespace sinodiff {

static_assert(std::endian::native == std::endian::little,
              "PROT I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'P', 'R', 'O', 'T'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 1;

void write_exact(std::ofstream& out, const void* p, std::size_t n,
                 const std::filesystem::path& path) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw IoError("write failed: " + path.string());
}

void read_exact(std::ifstream& in, void* p, std::size_t n,
                const std::filesystem::path& path) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n))
        throw IoError("truncated PROT file: " + path.string());
}

}  // namespace

void write_prot(const std::filesystem::path& path, const TensorF& tensor) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_exact(out, kMagic, 4, path);
    write_exact(out, &kVersion, 1, path);
    write_exact(out, &kDtypeF32, 1, path);
    std::uint16_t rank = static_cast<std::uint16_t>(tensor.shape.size());
    write_exact(out, &rank, 2, path);
    for (int d : tensor.shape) {
        std::uint32_t dim = static_cast<std::uint32_t>(d);
        write_exact(out, &dim, 4, path);
    }
    write_exact(out, tensor.data.data(), tensor.data.size() * sizeof(float), path);
}

TensorF read_prot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    char magic[4];
    read_exact(in, magic, 4, path);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad PROT magic in " + path.string());
    std::uint8_t version = 0, dtype = 0;
    read_exact(in, &version, 1, path);
    read_exact(in, &dtype, 1, path);
    if (version != kVersion)
        throw IoError("unsupported PROT version " + std::to_string(version) + " in " + path.string());
    if (dtype != kDtypeF32)
        throw IoError("unsupported PROT dtype " + std::to_string(dtype) + " in " + path.string());
    std::uint16_t rank = 0;
    read_exact(in, &rank, 2, path);
    std::vector<int> shape(rank);
    std::int64_t numel = 1;
    for (int i = 0; i < rank; ++i) {
        std::uint32_t dim = 0;
        read_exact(in, &dim, 4, path);
        if (dim == 0) throw IoError("zero dim in PROT file " + path.string());
        shape[static_cast<std::size_t>(i)] = static_cast<int>(dim);
        numel *= dim;
    }
    TensorF t;
    t.shape = std::move(shape);
    t.data.resize(static_cast<std::size_t>(numel));
    read_exact(in, t.data.data(), t.data.size() * sizeof(float), path);
    return t;
}

void write_prot(const std::filesystem::path& path, const std::vector<int>& shape,
                const std::vector<double>& values) {
    TensorF t;
    t.shape = shape;
    t.data.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) t.data[i] = static_cast<float>(values[i]);
    if (static_cast<std::int64_t>(t.data.size()) != shape_numel(shape))
        throw InvalidArgument("PROT write: data length does not match shape");
    write_prot(path, t);
}

}  // namespace sinodiff
