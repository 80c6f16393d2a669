#pragma once

#include <cstdint>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

/// T is the boundary half-width; t0 and t1 gate the even and odd passes.
/// All three are restricted to [1, 127] so the two shift branches of each
/// pass can never both fire.
struct PreprocessParams {
  int T = 1;
  int t0 = 1;
  int t1 = 4;

  /// Throws ErrorKind::Validation when any field is outside [1, 127].
  void validate() const;

  friend bool operator==(const PreprocessParams&, const PreprocessParams&) = default;
};

/// (2T+1)-ary location map. Symbol 2T marks an untouched position; any other
/// symbol records the pre-clamp value of a pixel that was clamped to T or 255-T.
class LocationMap {
public:
  LocationMap() = default;
  /// Every position starts at the "untouched" symbol 2T.
  LocationMap(int width, int height, int T);
  LocationMap(Grid<std::uint8_t> symbols, int T);

  int T() const noexcept { return T_; }
  int untouched() const noexcept { return 2 * T_; }
  int alphabet_size() const noexcept { return 2 * T_ + 1; }
  int width() const noexcept { return symbols_.width(); }
  int height() const noexcept { return symbols_.height(); }

  const Grid<std::uint8_t>& symbols() const noexcept { return symbols_; }
  std::uint8_t at(int i, int j) const noexcept { return symbols_.at(i, j); }
  void set(int i, int j, std::uint8_t s) noexcept { symbols_.at(i, j) = s; }

  /// Positions whose symbol differs from 2T.
  std::size_t marked_count() const noexcept;

  friend bool operator==(const LocationMap&, const LocationMap&) = default;

private:
  Grid<std::uint8_t> symbols_;
  int T_ = 1;
};

struct PreprocessOutput {
  GrayImage x;           ///< every pixel within [T, 255-T]
  LocationMap locmap;
  PreprocessParams params;
};

/// Images smaller than 2x2 have pixels without a usable neighbourhood.
void require_min_size(const GrayImage& img);

namespace preprocess {

/// Intermediates of the forward transform, exposed for inspection.
struct Stages {
  WideImage x0;  ///< after the even pass
  WideImage x1;  ///< after the odd pass, before clamping
};

/// One prediction computed by the forward or inverse transform.
struct PredictionEvent {
  int i;
  int j;
  int value;

  friend auto operator<=>(const PredictionEvent&, const PredictionEvent&) = default;
};
using PredictionTrace = std::vector<PredictionEvent>;

Stages forward_stages(const GrayImage& o, const PreprocessParams& params,
                      PredictionTrace* trace = nullptr);

/// O -> (X, L). Even cells shift by +-T when their prediction from O falls
/// below t0 or above 255-t0; odd cells then shift the same way against t1,
/// predicted from the even-pass result; the result is clamped into
/// [T, 255-T] and the clamped values are recorded in L.
PreprocessOutput forward(const GrayImage& o, const PreprocessParams& params,
                         PredictionTrace* trace = nullptr);

/// Recovers the pre-clamp image X1 from X and L. Throws ErrorKind::Corruption
/// if a marked position holds neither T nor 255-T, or X leaves [T, 255-T].
WideImage unclamp(const GrayImage& x, const LocationMap& locmap);

/// (X, L) -> O, bit-exact. Inconsistent input raises ErrorKind::Corruption.
GrayImage inverse(const GrayImage& x, const LocationMap& locmap, const PreprocessParams& params,
                  PredictionTrace* trace = nullptr);

}  // namespace preprocess

/// Number of positions of X treated as boundary pixels, i.e. l != 2T.
std::size_t boundary_count_after(const PreprocessOutput& out);

}  // namespace rdh
