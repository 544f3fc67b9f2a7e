// Copyright 2026 The MPH Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPH_ITEM_SET_H_
#define MPH_ITEM_SET_H_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mph/error.h"

namespace mph {

// Largest ground set supported by bit operations and evaluation.
inline constexpr int kMaxItems = 24;
// Largest ground set for which a full 2^m value table is materialized.
inline constexpr int kMaxExplicitItems = 20;

// A subset of the ground set {0, ..., m-1}, stored as a bit pattern.
class ItemSet {
 public:
  using Bits = std::uint32_t;

  constexpr ItemSet() = default;
  constexpr explicit ItemSet(Bits bits) : bits_(bits) {}

  static ItemSet Of(std::initializer_list<int> items) {
    return FromItems(std::span<const int>(items.begin(), items.size()));
  }
  static ItemSet FromItems(std::span<const int> items) {
    Bits bits = 0;
    for (int j : items) {
      if (j < 0 || j >= kMaxItems) {
        Fail(ErrorCode::kInvalidInput,
             "item index " + std::to_string(j) + " outside supported range");
      }
      bits |= Bits{1} << j;
    }
    return ItemSet(bits);
  }
  static constexpr ItemSet Full(int m) {
    return ItemSet(m >= 32 ? ~Bits{0} : (Bits{1} << m) - 1);
  }
  static constexpr ItemSet Singleton(int j) { return ItemSet(Bits{1} << j); }

  constexpr Bits bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool Contains(int j) const { return (bits_ >> j) & 1u; }
  constexpr bool IsSubsetOf(ItemSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool Intersects(ItemSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  // True when every member lies below m.
  constexpr bool FitsIn(int m) const { return IsSubsetOf(Full(m)); }
  // Highest member + 1, or 0 for the empty set.
  constexpr int Span() const { return 32 - std::countl_zero(bits_); }

  constexpr ItemSet With(int j) const { return ItemSet(bits_ | Bits{1} << j); }
  constexpr ItemSet Without(int j) const {
    return ItemSet(bits_ & ~(Bits{1} << j));
  }

  std::vector<int> Items() const {
    std::vector<int> out;
    out.reserve(size());
    for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  std::string ToString() const {
    std::string s = "{";
    bool first = true;
    for (int j : Items()) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  friend constexpr ItemSet operator|(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ | b.bits_);
  }
  friend constexpr ItemSet operator&(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr ItemSet operator-(ItemSet a, ItemSet b) {
    return ItemSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(ItemSet a, ItemSet b) = default;
  friend constexpr auto operator<=>(ItemSet a, ItemSet b) = default;

 private:
  Bits bits_ = 0;
};

// Calls fn(sub) for every subset of `set`, including the empty set and `set`
// itself, in decreasing bit-pattern order.
template <class Fn>
void ForEachSubset(ItemSet set, Fn&& fn) {
  const ItemSet::Bits full = set.bits();
  ItemSet::Bits sub = full;
  while (true) {
    fn(ItemSet(sub));
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }
}

// Binomial coefficient as a double; 0 when k < 0 or k > n.
inline double Binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// C(c, r) / C(t, r) without forming either coefficient.
inline double BinomialRatio(int c, int t, int r) {
  if (r < 0 || r > c) return 0.0;
  double ratio = 1.0;
  for (int i = 0; i < r; ++i) ratio *= static_cast<double>(c - i) / (t - i);
  return ratio;
}

}  // namespace mph

#endif  // MPH_ITEM_SET_H_
