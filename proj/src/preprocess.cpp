#include "rdh/preprocess.hpp"

#include <algorithm>

#include "rdh/predictor.hpp"

namespace rdh {

void PreprocessParams::validate() const {
  auto check = [](const char* name, int v) {
    if (v < 1 || v > 127)
      fail(ErrorKind::Validation,
           std::string(name) + " must lie in [1, 127], got " + std::to_string(v));
  };
  check("T", T);
  check("t0", t0);
  check("t1", t1);
}

LocationMap::LocationMap(int width, int height, int T)
    : symbols_(width, height, static_cast<std::uint8_t>(2 * T)), T_(T) {
  if (T < 1 || T > 127) fail(ErrorKind::Validation, "location map: T out of range");
}

LocationMap::LocationMap(Grid<std::uint8_t> symbols, int T) : symbols_(std::move(symbols)), T_(T) {
  if (T < 1 || T > 127) fail(ErrorKind::Validation, "location map: T out of range");
  for (auto s : symbols_.pixels())
    if (s > 2 * T)
      fail(ErrorKind::Corruption, "location map: symbol " + std::to_string(s) +
                                      " exceeds alphabet bound " + std::to_string(2 * T));
}

std::size_t LocationMap::marked_count() const noexcept {
  const auto u = static_cast<std::uint8_t>(untouched());
  return static_cast<std::size_t>(
      std::count_if(symbols_.pixels().begin(), symbols_.pixels().end(),
                    [u](std::uint8_t s) { return s != u; }));
}

void require_min_size(const GrayImage& img) {
  if (img.width() < 2 || img.height() < 2)
    fail(ErrorKind::Validation, "image must be at least 2x2, got " + std::to_string(img.width()) +
                                    "x" + std::to_string(img.height()));
}

namespace preprocess {

namespace {

/// Applies `shift(value, prediction)` to every cell of one parity. Predictions
/// read `context`, whose cells of that parity are never consulted.
template <typename Context, typename Shift>
void parity_pass(const Context& context, WideImage& target, Parity parity,
                 PredictionTrace* trace, Shift shift) {
  const int h = target.height();
  const int w = target.width();
  const int first = static_cast<int>(parity);
  for (int i = 0; i < h; ++i) {
    for (int j = (first + i) & 1; j < w; j += 2) {
      const int pred = predict(context, i, j);
      if (trace) trace->push_back({i, j, pred});
      target.at(i, j) = static_cast<std::int16_t>(shift(target.at(i, j), pred));
    }
  }
}

}  // namespace

Stages forward_stages(const GrayImage& o, const PreprocessParams& params,
                      PredictionTrace* trace) {
  params.validate();
  require_min_size(o);
  const int T = params.T;

  WideImage x0 = grid_cast<std::int16_t>(o);
  // Odd cells of O and X0 coincide, so even predictions may read O directly.
  parity_pass(o, x0, Parity::Even, trace, [&](int v, int pred) {
    if (pred < params.t0) return v + T;
    if (pred > 255 - params.t0) return v - T;
    return v;
  });

  WideImage x1 = x0;
  parity_pass(x0, x1, Parity::Odd, trace, [&](int v, int pred) {
    if (pred < params.t1) return v + T;
    if (pred > 255 - params.t1) return v - T;
    return v;
  });
  return {std::move(x0), std::move(x1)};
}

PreprocessOutput forward(const GrayImage& o, const PreprocessParams& params,
                         PredictionTrace* trace) {
  Stages st = forward_stages(o, params, trace);
  const int T = params.T;
  const int lo = T;
  const int hi = 255 - T;

  GrayImage x(o.width(), o.height());
  LocationMap l(o.width(), o.height(), T);
  for (int i = 0; i < o.height(); ++i) {
    for (int j = 0; j < o.width(); ++j) {
      const int v = st.x1.at(i, j);
      if (v < lo) {
        x.at(i, j) = static_cast<std::uint8_t>(lo);
        l.set(i, j, static_cast<std::uint8_t>(v + T));
      } else if (v > hi) {
        x.at(i, j) = static_cast<std::uint8_t>(hi);
        l.set(i, j, static_cast<std::uint8_t>(255 + T - v));
      } else {
        x.at(i, j) = static_cast<std::uint8_t>(v);
      }
    }
  }
  return {std::move(x), std::move(l), params};
}

WideImage unclamp(const GrayImage& x, const LocationMap& locmap) {
  const int T = locmap.T();
  WideImage x1(x.width(), x.height());
  for (int i = 0; i < x.height(); ++i) {
    for (int j = 0; j < x.width(); ++j) {
      const int v = x.at(i, j);
      const int s = locmap.at(i, j);
      if (v < T || v > 255 - T)
        fail(ErrorKind::Corruption, "preprocessed pixel (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") outside [T, 255-T]");
      if (s > 2 * T) fail(ErrorKind::Corruption, "location map symbol out of range");
      int r;
      if (s == 2 * T) {
        r = v;
      } else if (v == T) {
        r = s - T;
      } else if (v == 255 - T) {
        r = 255 + T - s;
      } else {
        fail(ErrorKind::Corruption, "location map marks (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") but pixel was not clamped");
      }
      x1.at(i, j) = static_cast<std::int16_t>(r);
    }
  }
  return x1;
}

GrayImage inverse(const GrayImage& x, const LocationMap& locmap, const PreprocessParams& params,
                  PredictionTrace* trace) {
  params.validate();
  require_min_size(x);
  const int T = params.T;
  if (locmap.T() != T)
    fail(ErrorKind::Corruption, "location map alphabet does not match T=" + std::to_string(T));
  if (locmap.width() != x.width() || locmap.height() != x.height())
    fail(ErrorKind::Validation, "location map is " + std::to_string(locmap.width()) + "x" +
                                    std::to_string(locmap.height()) + " but image is " +
                                    std::to_string(x.width()) + "x" + std::to_string(x.height()));

  const WideImage x1 = unclamp(x, locmap);

  // Even cells are untouched by the odd pass, so these predictions equal the encoder's.
  WideImage x0 = x1;
  parity_pass(x1, x0, Parity::Odd, trace, [&](int v, int pred) {
    if (pred < params.t1) return v - T;
    if (pred > 255 - params.t1) return v + T;
    return v;
  });

  WideImage o = x0;
  parity_pass(x0, o, Parity::Even, trace, [&](int v, int pred) {
    if (pred < params.t0) return v - T;
    if (pred > 255 - params.t0) return v + T;
    return v;
  });

  GrayImage out(x.width(), x.height());
  auto src = o.pixels();
  auto dst = out.pixels();
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (src[k] < 0 || src[k] > 255)
      fail(ErrorKind::Corruption, "reconstructed pixel " + std::to_string(src[k]) +
                                      " outside [0, 255]");
    dst[k] = static_cast<std::uint8_t>(src[k]);
  }
  return out;
}

}  // namespace preprocess

std::size_t boundary_count_after(const PreprocessOutput& out) { return out.locmap.marked_count(); }

}  // namespace rdh
