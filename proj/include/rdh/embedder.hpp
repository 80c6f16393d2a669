#pragma once

#include <string>

#include "rdh/bitstream.hpp"
#include "rdh/image.hpp"

namespace rdh {

struct Extraction {
  BitStream bits;   ///< every bit the cover carried, padding included
  GrayImage cover;  ///< the image before embedding
};

/// Reversible embedding operation applied to a boundary-free image.
///
/// Implementations promise extract(embed(x, b)) == {b + zero padding, x}
/// whenever b fits, and never move a pixel by more than max_shift().
/// An image whose pixels all lie in [T, 255 - T] with T >= min_T() can
/// therefore be marked without overflow.
class Embedder {
public:
  virtual ~Embedder() = default;

  virtual std::string name() const = 0;
  virtual int max_shift() const noexcept = 0;
  virtual int min_T() const noexcept = 0;

  virtual std::size_t capacity(const GrayImage& x) const = 0;
  virtual GrayImage embed(const GrayImage& x, const BitStream& bits) const = 0;
  virtual Extraction extract(const GrayImage& y) const = 0;
};

/// Prediction-error histogram shifting on the even checkerboard cells.
///
/// Even cells are predicted from their odd neighbours (which are never
/// modified). Errors 0 and -1 each carry one bit; all other errors move one
/// step outward to make room. Cells are visited in raster order and unused
/// carrier cells hold zero bits.
class HistogramShiftEmbedder final : public Embedder {
public:
  std::string name() const override { return "pe-histogram-shift"; }
  int max_shift() const noexcept override { return 1; }
  int min_T() const noexcept override { return 1; }

  std::size_t capacity(const GrayImage& x) const override;
  GrayImage embed(const GrayImage& x, const BitStream& bits) const override;
  Extraction extract(const GrayImage& y) const override;
};

}  // namespace rdh
