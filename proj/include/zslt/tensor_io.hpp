#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "zslt/tensor.hpp"

// MBT1 tensor blocks: "MBT1", u32 rank, rank x u64 dims, row-major f32 data,
// all little-endian. A container is a sequence of (u32 name length, UTF-8
// name, MBT1 block) records sorted by name.
namespace zslt::io {

using NamedTensors = std::map<std::string, Tensor<float>>;

void write_tensor(std::ostream& out, const Tensor<float>& tensor);
Tensor<float> read_tensor(std::istream& in);

void save_tensor(const std::filesystem::path& path, const Tensor<float>& tensor);
Tensor<float> load_tensor(const std::filesystem::path& path);

void write_container(std::ostream& out, const NamedTensors& tensors);
NamedTensors read_container(std::istream& in);

void save_container(const std::filesystem::path& path, const NamedTensors& tensors);
NamedTensors load_container(const std::filesystem::path& path);

// Little-endian primitives shared by the other binary formats.
void put_u32(std::ostream& out, std::uint32_t v);
void put_u64(std::ostream& out, std::uint64_t v);
void put_f32(std::ostream& out, float v);
std::uint32_t get_u32(std::istream& in, const char* what);
std::uint64_t get_u64(std::istream& in, const char* what);
float get_f32(std::istream& in, const char* what);
void get_bytes(std::istream& in, char* dst, std::size_t n, const char* what);

}  // namespace zslt::io
