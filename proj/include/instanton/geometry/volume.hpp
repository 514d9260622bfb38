#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/model.hpp"
#include "instanton/parallel.hpp"

namespace instanton {

struct VolumeEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t accepted = 0;
};

inline constexpr std::size_t kVolumeBlockSize = 4096;

/// Monte Carlo volume of {proxy < radius} in a fundamental domain.
///
/// Samples are drawn uniformly in the model's sampling box and weighted by
/// sqrt(det g). The budget is cut into fixed blocks with one seeded substream
/// each, and block sums are merged in block order, so the result depends only
/// on (samples, seed) and not on the worker count.
inline VolumeEstimate volume_of_ball_mc(const GeometryModel& model, const ChartPoint& center,
                                        double radius, std::size_t samples, std::uint64_t seed,
                                        unsigned workers = default_workers()) {
  if (samples < 10000) throw InvalidParams("volume_of_ball_mc needs at least 1e4 samples");
  if (!(radius > 0.0)) throw InvalidParams("ball radius must be positive");
  model.require_domain(center, "volume_of_ball_mc");
  if (!(model.radial_proxy(center) < radius))
    throw DomainError("volume_of_ball_mc: center lies outside the requested ball");

  const SamplingBox box = model.fundamental_box(radius);
  if (!(box.volume() > 0.0) || !std::isfinite(box.volume()))
    throw DomainError("volume_of_ball_mc: ball does not fit the chart sampling box");

  const std::size_t blocks = (samples + kVolumeBlockSize - 1) / kVolumeBlockSize;
  struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t accepted = 0;
  };
  std::vector<BlockSums> sums(blocks);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        std::mt19937_64 rng(substream_seed(seed, b));
        const std::size_t begin = b * kVolumeBlockSize;
        const std::size_t end = std::min(samples, begin + kVolumeBlockSize);
        BlockSums local;
        for (std::size_t i = begin; i < end; ++i) {
          ChartPoint p;
          for (int k = 0; k < 4; ++k) p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * uniform01(rng);
          double f = 0.0;
          if (model.in_domain(p) && model.in_fundamental_domain(p) && model.radial_proxy(p) < radius) {
            f = std::sqrt(std::abs(model.metric_at(p).determinant()));
            ++local.accepted;
          }
          local.sum += f;
          local.sum_sq += f * f;
        }
        sums[b] = local;
      },
      workers);

  double sum = 0.0, sum_sq = 0.0;
  std::size_t accepted = 0;
  for (const auto& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
    accepted += s.accepted;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean) * n / (n - 1.0);
  const double scale = box.volume() * box.quotient_weight;
  return {scale * mean, scale * std::sqrt(var / n), samples, accepted};
}

}  // namespace instanton
