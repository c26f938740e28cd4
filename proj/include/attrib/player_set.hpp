// Copyright 2026 The Attribeo Authors.
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

#ifndef ATTRIB_PLAYER_SET_HPP
#define ATTRIB_PLAYER_SET_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace attrib {

// Set of player indices backed by a bit vector. Not capped at 64 players:
// extended (occurrence/position) universes can grow past one word.
// Totally ordered by numeric value so it can key a std::map.
class player_set {
 public:
  player_set() = default;

  static player_set single(int player) {
    player_set s;
    s.insert(player);
    return s;
  }

  static player_set full(int count) {
    player_set s;
    for (int i = 0; i < count; ++i) s.insert(i);
    return s;
  }

  void insert(int player) {
    auto block = static_cast<size_t>(player) / 64;
    if (block >= blocks_.size()) blocks_.resize(block + 1, 0);
    blocks_[block] |= std::uint64_t{1} << (static_cast<size_t>(player) % 64);
  }

  void erase(int player) {
    auto block = static_cast<size_t>(player) / 64;
    if (block >= blocks_.size()) return;
    blocks_[block] &= ~(std::uint64_t{1} << (static_cast<size_t>(player) % 64));
    normalize();
  }

  bool contains(int player) const {
    auto block = static_cast<size_t>(player) / 64;
    if (block >= blocks_.size()) return false;
    return (blocks_[block] >> (static_cast<size_t>(player) % 64)) & 1;
  }

  bool empty() const { return blocks_.empty(); }

  int size() const {
    int n = 0;
    for (auto b : blocks_) n += std::popcount(b);
    return n;
  }

  bool subset_of(const player_set& other) const {
    if (blocks_.size() > other.blocks_.size()) return false;
    for (size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i] & ~other.blocks_[i]) return false;
    }
    return true;
  }

  int intersection_size(const player_set& other) const {
    int n = 0;
    size_t common = std::min(blocks_.size(), other.blocks_.size());
    for (size_t i = 0; i < common; ++i) n += std::popcount(blocks_[i] & other.blocks_[i]);
    return n;
  }

  bool intersects(const player_set& other) const {
    size_t common = std::min(blocks_.size(), other.blocks_.size());
    for (size_t i = 0; i < common; ++i) {
      if (blocks_[i] & other.blocks_[i]) return true;
    }
    return false;
  }

  player_set united(const player_set& other) const {
    player_set out;
    out.blocks_.resize(std::max(blocks_.size(), other.blocks_.size()), 0);
    for (size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] |= blocks_[i];
    for (size_t i = 0; i < other.blocks_.size(); ++i) out.blocks_[i] |= other.blocks_[i];
    return out;
  }

  player_set intersected(const player_set& other) const {
    player_set out;
    size_t common = std::min(blocks_.size(), other.blocks_.size());
    out.blocks_.resize(common, 0);
    for (size_t i = 0; i < common; ++i) out.blocks_[i] = blocks_[i] & other.blocks_[i];
    out.normalize();
    return out;
  }

  player_set without(const player_set& other) const {
    player_set out = *this;
    size_t common = std::min(blocks_.size(), other.blocks_.size());
    for (size_t i = 0; i < common; ++i) out.blocks_[i] &= ~other.blocks_[i];
    out.normalize();
    return out;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (size_t i = 0; i < blocks_.size(); ++i) {
      std::uint64_t b = blocks_[i];
      while (b) {
        int bit = std::countr_zero(b);
        out.push_back(static_cast<int>(i * 64) + bit);
        b &= b - 1;
      }
    }
    return out;
  }

  bool operator==(const player_set& other) const = default;

  std::strong_ordering operator<=>(const player_set& other) const {
    if (blocks_.size() != other.blocks_.size())
      return blocks_.size() <=> other.blocks_.size();
    for (size_t i = blocks_.size(); i-- > 0;) {
      if (blocks_[i] != other.blocks_[i]) return blocks_[i] <=> other.blocks_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    while (!blocks_.empty() && blocks_.back() == 0) blocks_.pop_back();
  }

  std::vector<std::uint64_t> blocks_;  // no trailing zero blocks
};

}  // namespace attrib

#endif  // ATTRIB_PLAYER_SET_HPP
