#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cachelab/kernel.hpp"

namespace cachelab {

/// Which of the two CLOCK pairs an operation addresses: (T1, B1) or (T2, B2).
enum class Tier : std::uint8_t { One = 1, Two = 2 };

/// Compact CAR: CAR's two CLOCKs and two history lists packed into two
/// fixed arrays of c slots each.
///
/// Top array (resident chunks, one R-bit each):
///
///     slot 0                                            slot c-1
///     [ T1 ->  ...  T1 edge ][ free ... ][ T2 edge ...  <- T2 ]
///
/// T1 grows rightward from slot 0 and its hand sweeps rightward; T2 grows
/// leftward from slot c-1 and its hand sweeps leftward. The bottom array holds
/// ghost ids for B1/B2 with the same geometry and no R-bits. Every removal
/// first swaps the leaving entry with its list's edge entry, so each list stays
/// one contiguous run and the slot freed is adjacent to both lists.
///
/// Hands address slot positions. A hand that falls outside its list's run (the
/// run shrank past it) restarts at the run's first slot.
class CompactCar final : public Policy {
 public:
  struct Options {
    // false gives CFR: the target size p never moves from fixed_target.
    bool adaptive = true;
    std::size_t fixed_target = 0;
  };

  /// Explicit list contents, used to restore a state for tests and golden
  /// dumps. t1/b1 are listed from slot 0 rightward; t2/b2 from slot c-1
  /// leftward. Hands are offsets into those lists.
  struct Layout {
    std::vector<std::pair<ChunkId, bool>> t1;
    std::vector<std::pair<ChunkId, bool>> t2;
    std::vector<ChunkId> b1;
    std::vector<ChunkId> b2;
    std::size_t target = 0;
    std::size_t hand_t1 = 0;
    std::size_t hand_t2 = 0;
    std::size_t hand_b1 = 0;
    std::size_t hand_b2 = 0;

    friend bool operator==(const Layout&, const Layout&) = default;
  };

  struct Victim {
    std::uint32_t free_slot;
    ChunkId evicted;
  };

  explicit CompactCar(std::size_t capacity);
  CompactCar(std::size_t capacity, Options options);

  /// CFR: adaptation disabled, p pinned to round-half-up(q * c).
  static CompactCar fixed_ratio(std::size_t capacity, double q);

  static CompactCar from_layout(std::size_t capacity, const Layout& layout);
  static CompactCar from_layout(std::size_t capacity, const Layout& layout, Options options);

  AccessOutcome access(const Request& request) override { return access(request.chunk); }
  AccessOutcome access(ChunkId x);

  // Building blocks of access(); public so each can be exercised directly.

  /// Drops ghost x from B_i after swapping it to B_i's edge.
  void discard_bottom(Tier tier, ChunkId x);
  /// Drops the ghost under B_i's hand and rotates the hand.
  void replace_bottom(Tier tier);
  /// Runs the CLOCK sweep on T_i, records the victim as a ghost in B_i and
  /// returns the freed slot (adjacent to both T lists). Hand rotations are
  /// added to `hand_movements`. If T1 drains while its set bits migrate to
  /// T2, the sweep continues on T2.
  Victim replace_top(Tier tier, std::uint32_t& hand_movements);
  /// Exchanges `slot` with the edge slot of `region`, keeping the directory
  /// in step. Hands stay on their slots.
  void edge_swap(Region region, std::uint32_t slot);

  std::string_view name() const override { return options_.adaptive ? "compact-car" : "cfr"; }
  std::size_t capacity() const override { return capacity_; }
  std::size_t size() const override { return t1_len_ + t2_len_; }
  bool contains(ChunkId chunk) const override;
  std::vector<ChunkId> residents() const override;
  std::optional<double> target_ratio() const override { return target_q(); }

  /// q = p / c.
  double target_q() const {
    return static_cast<double>(target_) / static_cast<double>(capacity_);
  }

  std::size_t target() const { return target_; }
  std::size_t t1_size() const { return t1_len_; }
  std::size_t t2_size() const { return t2_len_; }
  std::size_t b1_size() const { return b1_len_; }
  std::size_t b2_size() const { return b2_len_; }
  bool adaptive() const { return options_.adaptive; }

  std::optional<Location> locate(ChunkId chunk) const { return directory_.lookup(chunk); }
  std::optional<bool> reference_bit(ChunkId chunk) const;

  std::uint32_t hand(Region region) const;

  /// Number of chunks that entered T2 by a ghost hit / by R-bit promotion.
  std::uint64_t t2_entries_from_ghost() const { return t2_from_ghost_; }
  std::uint64_t t2_entries_from_promotion() const { return t2_from_promotion_; }

  Layout layout() const;

  /// Full structural check; returns one message per violated invariant.
  std::vector<std::string> verify() const;

  /// Text dump, one line per slot: array, slot, region, chunk id, R-bit, hand.
  std::string dump() const;

 private:
  struct TopSlot {
    ChunkId id;
    bool ref = false;
  };

  std::uint32_t edge_slot(Region region) const;
  std::uint32_t first_slot(Region region) const;
  std::size_t run_length(Region region) const;
  bool in_run(Region region, std::uint32_t slot) const;
  std::uint32_t& hand_ref(Region region);
  void rotate(Region region);
  void settle_hand(Region region);
  ChunkId id_at(Region region, std::uint32_t slot) const;
  void insert_top(Tier tier, std::uint32_t slot, ChunkId x);

  std::size_t capacity_;
  Options options_;
  std::vector<TopSlot> top_;
  std::vector<ChunkId> bottom_;
  std::size_t t1_len_ = 0;
  std::size_t t2_len_ = 0;
  std::size_t b1_len_ = 0;
  std::size_t b2_len_ = 0;
  std::uint32_t hand_t1_ = 0;
  std::uint32_t hand_t2_ = 0;
  std::uint32_t hand_b1_ = 0;
  std::uint32_t hand_b2_ = 0;
  std::size_t target_ = 0;
  DirectoryIndex directory_;
  std::uint64_t t2_from_ghost_ = 0;
  std::uint64_t t2_from_promotion_ = 0;
};

}  // namespace cachelab
