#include <algorithm>
#include <cmath>
#include <string>

#include "dicmine/dic.hpp"
#include "dicmine/error.hpp"

namespace dicmine {

MiningParams MiningParams::make(double minsup, std::size_t n, std::size_t interval, int threads) {
  if (!(minsup > 0.0 && minsup <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "minsup must lie in (0, 1], got " + std::to_string(minsup));
  }
  if (n == 0) throw Error(ErrorCode::EmptyDatabase, "database has no transactions");
  if (interval < 1 || interval > n) {
    throw Error(ErrorCode::InvalidParams, "interval M must lie in [1, " + std::to_string(n) +
                                              "], got " + std::to_string(interval));
  }
  if (threads < 1) {
    throw Error(ErrorCode::InvalidParams, "threads must be >= 1, got " + std::to_string(threads));
  }
  MiningParams p;
  p.minsup_ = minsup;
  p.n_ = n;
  p.interval_ = interval;
  p.threads_ = threads;
  p.minsup_count_ = support_threshold(minsup, n);
  p.stop_max_ = static_cast<std::uint32_t>((n + interval - 1) / interval);
  if (p.minsup_count_ < 1 || p.minsup_count_ > n) {
    throw Error(ErrorCode::InvalidParams,
                "derived support threshold " + std::to_string(p.minsup_count_) +
                    " outside [1, " + std::to_string(n) + "]");
  }
  return p;
}

std::pair<std::size_t, std::size_t> MiningParams::chunk(std::uint32_t stop) const noexcept {
  const std::size_t first = static_cast<std::size_t>(stop - 1) * interval_;
  const std::size_t end = std::min(static_cast<std::size_t>(stop) * interval_, n_);
  return {first, end - 1};
}

MiningParams MiningParams::with_threads(int threads) const {
  return make(minsup_, n_, interval_, threads);
}

}  // namespace dicmine
