#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "dtl/lattice.hpp"

namespace dtl {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Three sorted sides of at most 21 bits each in one word. Never zero for real triangles.
struct PackedKey {
  static constexpr int kBits = 21;
  static constexpr std::int64_t kMax = (std::int64_t{1} << kBits) - 1;
  using type = std::uint64_t;

  static type make(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return static_cast<type>(a) | (static_cast<type>(b) << kBits) | (static_cast<type>(c) << (2 * kBits));
  }
  static IntShape unpack(type k) {
    const auto m = static_cast<type>(kMax);
    return {static_cast<std::int64_t>(k & m), static_cast<std::int64_t>((k >> kBits) & m),
            static_cast<std::int64_t>(k >> (2 * kBits))};
  }
  static bool empty(type k) { return k == 0; }
  static std::uint64_t hash(type k) { return mix64(k); }
};

// Full-width fallback for large coordinates or scaled Gram forms.
struct WideKey {
  using type = std::array<std::uint64_t, 3>;

  static type make(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(c)};
  }
  static IntShape unpack(const type& k) {
    return {static_cast<std::int64_t>(k[0]), static_cast<std::int64_t>(k[1]), static_cast<std::int64_t>(k[2])};
  }
  static bool empty(const type& k) { return k[0] == 0 && k[1] == 0 && k[2] == 0; }
  static std::uint64_t hash(const type& k) { return mix64(k[0] ^ mix64(k[1] ^ mix64(k[2]))); }
};

// Open-addressing set with linear probing; the all-zero key marks an empty slot.
template <class Traits>
class ShapeSet {
 public:
  using Key = typename Traits::type;

  explicit ShapeSet(std::size_t initial_capacity = 1 << 12) {
    std::size_t cap = 16;
    while (cap < initial_capacity) cap <<= 1;
    slots_.assign(cap, Key{});
  }

  bool insert(const Key& k) {
    if ((size_ + 1) * 10 > slots_.size() * 7) grow();
    return place(slots_, k);
  }

  // Prefetches every home slot before probing; pays off once the table outgrows cache.
  void insert_batch(std::span<const Key> keys) {
    while ((size_ + keys.size()) * 10 > slots_.size() * 7) grow();
    const std::size_t mask = slots_.size() - 1;
    std::array<std::size_t, kBatch> home{};
    const std::size_t m = std::min(keys.size(), kBatch);
    for (std::size_t i = 0; i < m; ++i) {
      home[i] = Traits::hash(keys[i]) & mask;
      __builtin_prefetch(&slots_[home[i]]);
    }
    for (std::size_t i = 0; i < m; ++i) place_at(slots_, keys[i], home[i]);
    if (keys.size() > m) insert_batch(keys.subspan(m));
  }

  static constexpr std::size_t kBatch = 32;

  std::size_t size() const { return size_; }

  std::vector<Key> sorted_keys() const {
    std::vector<Key> out;
    out.reserve(size_);
    for (const auto& k : slots_) {
      if (!Traits::empty(k)) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool place(std::vector<Key>& slots, const Key& k) {
    return place_at(slots, k, Traits::hash(k) & (slots.size() - 1));
  }

  bool place_at(std::vector<Key>& slots, const Key& k, std::size_t home) {
    const std::size_t mask = slots.size() - 1;
    for (std::size_t i = home;; i = (i + 1) & mask) {
      if (Traits::empty(slots[i])) {
        slots[i] = k;
        ++size_;
        return true;
      }
      if (slots[i] == k) return false;
    }
  }

  void grow() {
    std::vector<Key> bigger(slots_.size() * 2, Key{});
    size_ = 0;
    for (const auto& k : slots_) {
      if (!Traits::empty(k)) place(bigger, k);
    }
    slots_.swap(bigger);
  }

  std::vector<Key> slots_;
  std::size_t size_ = 0;
};

struct ShardedResult {
  std::uint64_t distinct = 0;
  std::vector<IntShape> shapes;  // filled only when requested
};

// Deduplicates every key produced by `enumerate(emit)`.
//
// Key space is split into `shards` hash shards on the high hash bits (slots use the low
// bits). Each shard runs the full enumeration and keeps only its own keys, so shard sets
// are disjoint and the count is their sum. Workers claim shards from a shared counter;
// the answer does not depend on the worker count.
template <class Traits, class Enumerate>
ShardedResult sharded_distinct(const Enumerate& enumerate, unsigned shards, unsigned workers,
                               bool collect_shapes) {
  shards = std::max(1u, shards);
  workers = std::clamp(workers, 1u, shards);
  std::vector<std::uint64_t> counts(shards, 0);
  std::vector<std::vector<IntShape>> shapes(collect_shapes ? shards : 0);
  std::atomic<unsigned> next{0};

  auto run = [&] {
    for (unsigned s; (s = next.fetch_add(1)) < shards;) {
      using Key = typename Traits::type;
      ShapeSet<Traits> set;
      std::array<Key, ShapeSet<Traits>::kBatch> buf;
      std::size_t fill = 0;
      auto push = [&](const Key& k) {
        buf[fill++] = k;
        if (fill == buf.size()) {
          set.insert_batch(buf);
          fill = 0;
        }
      };
      if (shards == 1) {
        enumerate(push);
      } else {
        enumerate([&](const Key& k) {
          if ((Traits::hash(k) >> 32) % shards == s) push(k);
        });
      }
      set.insert_batch(std::span<const Key>(buf.data(), fill));
      counts[s] = set.size();
      if (collect_shapes) {
        for (const auto& k : set.sorted_keys()) shapes[s].push_back(Traits::unpack(k));
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();

  ShardedResult out;
  for (auto c : counts) out.distinct += c;
  if (collect_shapes) {
    for (auto& part : shapes) out.shapes.insert(out.shapes.end(), part.begin(), part.end());
    std::sort(out.shapes.begin(), out.shapes.end());
  }
  return out;
}

}  // namespace dtl
