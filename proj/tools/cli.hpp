#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rdh/locmap_codec.hpp"
#include "rdh/preprocess.hpp"

namespace rdh::cli {

/// Entry point of the rdhtool binary. Returns the process exit code:
/// 0 success, 2 validation, 3 capacity, 4 corruption, 5 I/O.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Side file written by `preprocess`: the compressed map container followed
/// by one byte each for T, t0 and t1.
std::vector<std::uint8_t> write_side_file(const CompressedMap& map, const PreprocessParams& params);

struct SideFile {
  CompressedMap map;
  PreprocessParams params;
};
SideFile read_side_file(std::span<const std::uint8_t> bytes);

}  // namespace rdh::cli
