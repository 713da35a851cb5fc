#include "rlab/jet.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace rlab {
namespace {

// Multi-indices packed 4 bits per variable (orders <= 15, nvars <= 16).
std::uint64_t pack(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (size_t v = 0; v < exps.size(); ++v)
    key |= static_cast<std::uint64_t>(exps[v]) << (4 * v);
  return key;
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || nvars > 16)
    throw std::invalid_argument("jet layout: nvars must be in 1..16");
  if (order < 0 || order > 15)
    throw std::invalid_argument("jet layout: order must be in 0..15");

  // Enumerate multi-indices in graded lexicographic order.
  std::vector<int> cur(static_cast<size_t>(nvars), 0);
  auto emit = [&] {
    double fact = 1.0;
    int deg = 0;
    for (int v = 0; v < nvars; ++v) {
      const int e = cur[static_cast<size_t>(v)];
      deg += e;
      for (int i = 2; i <= e; ++i) fact *= i;
      exps_.push_back(static_cast<std::int8_t>(e));
    }
    deg_.push_back(static_cast<std::int8_t>(deg));
    fact_.push_back(fact);
  };
  auto rec = [&](auto&& self, int v, int rem) -> void {
    if (v == nvars - 1) {
      cur[static_cast<size_t>(v)] = rem;
      emit();
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[static_cast<size_t>(v)] = e;
      self(self, v + 1, rem - e);
    }
  };
  cum_.assign(static_cast<size_t>(order) + 1, 0);
  for (int d = 0; d <= order; ++d) {
    rec(rec, 0, d);
    cum_[static_cast<size_t>(d)] = static_cast<int>(deg_.size());
  }
  const int total = size();

  std::unordered_map<std::uint64_t, int> index;
  index.reserve(static_cast<size_t>(total) * 2);
  std::vector<int> tmp(static_cast<size_t>(nvars));
  for (int p = 0; p < total; ++p) {
    for (int v = 0; v < nvars; ++v) tmp[static_cast<size_t>(v)] = exponent(p, v);
    index.emplace(pack(tmp), p);
  }

  // Compressed product table: row(i) covers all j with
  // degree(i) + degree(j) <= order.
  row_start_.assign(static_cast<size_t>(total), 0);
  size_t entries = 0;
  for (int p = 0; p < total; ++p) {
    row_start_[static_cast<size_t>(p)] = entries;
    entries += static_cast<size_t>(size(order - degree(p)));
  }
  prod_.resize(entries);
  std::vector<int> sum(static_cast<size_t>(nvars));
  for (int i = 0; i < total; ++i) {
    const size_t base = row_start_[static_cast<size_t>(i)];
    const int jlim = size(order - degree(i));
    for (int j = 0; j < jlim; ++j) {
      for (int v = 0; v < nvars; ++v)
        sum[static_cast<size_t>(v)] = exponent(i, v) + exponent(j, v);
      prod_[base + static_cast<size_t>(j)] =
          static_cast<std::uint32_t>(index.at(pack(sum)));
    }
  }

  // Shift-up table for derivative extraction.
  up_.assign(static_cast<size_t>(nvars) * total, -1);
  for (int p = 0; p < total; ++p) {
    if (degree(p) >= order) continue;
    for (int v = 0; v < nvars; ++v) {
      for (int w = 0; w < nvars; ++w) sum[static_cast<size_t>(w)] = exponent(p, w);
      sum[static_cast<size_t>(v)] += 1;
      up_[static_cast<size_t>(v) * total + p] = index.at(pack(sum));
    }
  }
}

int JetLayout::position(std::span<const int> exps) const {
  int deg = 0;
  for (int e : exps) deg += e;
  if (deg > order_) return -1;
  // Walk the graded-lex enumeration combinatorially: within the degree-d
  // block, count tuples that precede `exps`.
  // Simpler and fast enough at our sizes: linear scan of the degree block.
  for (int p = size(deg - 1); p < size(deg); ++p) {
    bool match = true;
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exponent(p, static_cast<int>(v)) != exps[v]) {
        match = false;
        break;
      }
    }
    if (match) return p;
  }
  return -1;
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto layout = std::shared_ptr<const JetLayout>(new JetLayout(nvars, order));
  cache.emplace(key, layout);
  return layout;
}

}  // namespace rlab
