#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

/// Synthetic image models. The last three imitate photographs with clipped
/// shadows or highlights: a smooth random field is mapped linearly onto the
/// pixel range, sensor noise is added, and the result is clipped to [0, 255].
enum class FixtureKind {
  Constant,
  Gradient,
  Uniform,      ///< i.i.d. uniform pixels
  Scattered,    ///< smooth field with isolated 0/255 impulses
  Clustered,    ///< clipped at both ends, large 0 and 255 blobs
  LowLight,     ///< dark scene with clipped shadows
  Overexposed,  ///< bright scene with clipped highlights
};

const char* to_string(FixtureKind kind) noexcept;

struct Fixture {
  std::string name;
  FixtureKind kind = FixtureKind::Constant;
  std::uint64_t seed = 0;
  /// Fraction of the area the model drives into [0, 1) or (254, 255].
  double target_boundary_fraction = 0.0;
  GrayImage image;
};

/// Deterministic for a given (kind, size, seed).
Fixture make_fixture(FixtureKind kind, int width, int height, std::uint64_t seed);

/// `per_kind` images of every kind, each `width` x `height`.
std::vector<Fixture> generate_corpus(std::uint64_t seed, int per_kind, int width, int height);

/// Clipped-photograph models only (Clustered, LowLight, Overexposed), cycling.
std::vector<Fixture> boundary_heavy_corpus(std::uint64_t seed, int count, int width, int height);

}  // namespace rdh
