#ifndef P4MR_WIRE_HPP
#define P4MR_WIRE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace p4mr {

// All multi-byte fields are big-endian on the wire.
//
//   offset  size  field
//        0     8  preamble (0x50344D5250344D52)
//        8     1  app_id
//        9     1  routing_id
//       10     1  collection_id (0 = none; otherwise origin label + 1)
//       11     8  data
//
// UNIT carries one value in `data`. PACKED reuses `data` as the item
// count k and appends k 8-byte items. COLLECT carries no data. RESULT is
// a UNIT bound for the collection host.
inline constexpr uint64_t kPreamble = 0x50344D5250344D52ull;  // "P4MRP4MR"
inline constexpr int kHeaderBytes = 19;
inline constexpr int kItemBytes = 8;

inline constexpr uint8_t kAppUnit = 1;
inline constexpr uint8_t kAppPacked = 2;
inline constexpr uint8_t kAppCollect = 3;
inline constexpr uint8_t kAppResult = 4;

struct P4mrHeader {
  uint8_t app_id = 0;
  uint8_t routing_id = 0;
  uint8_t collection_id = 0;
  uint64_t data = 0;
  bool operator==(const P4mrHeader&) const = default;
};

using Frame = std::vector<uint8_t>;

void put_u64_be(Frame& out, uint64_t v);
uint64_t get_u64_be(const uint8_t* p);

Frame encode_header(const P4mrHeader& h);
// Throws BadPreamble / TruncatedFrame. Ignores any payload past the header.
P4mrHeader decode_header(const Frame& frame);

// One data item: header (data = value) plus the 8-byte item payload,
// 27 bytes on the wire.
Frame make_unit(uint8_t routing_id, uint64_t value, uint8_t collection_id = 0);
Frame make_packed(uint8_t routing_id, const std::vector<uint64_t>& items);
// COLLECT for `origin_label`'s stream; collection_id = origin_label + 1.
// Throws ZeroOrigin when the label does not fit that encoding.
Frame make_collect(uint8_t routing_id, int origin_label);
Frame make_result(uint8_t routing_id, uint64_t value, uint8_t collection_id);

struct PackedView {
  P4mrHeader header;
  std::vector<uint64_t> items;
};
// Throws TruncatedFrame unless the frame holds exactly the advertised
// number of items.
PackedView decode_packed(const Frame& frame);

// A word travels as its bytes left-aligned in a u64, zero-padded on the
// right: "bob" -> 0x626F620000000000. Longer than 8 bytes throws
// WordTooLong; empty words are fine (they encode as 0).
uint64_t word_item(std::string_view word);
std::string item_word(uint64_t item);

// FNV-1a over the item's 8 wire bytes, most significant first.
uint64_t fnv1a64(const uint8_t* data, size_t len);
uint64_t hash_item(uint64_t item);

// Largest k such that a PACKED frame with k items fits in `mtu` bytes.
// Throws MtuTooSmall when even one item does not fit.
int max_items_per_frame(int mtu);

enum class SerializeMode { PerItem, MtuPacked };

// A dataset as frames: one UNIT per item, or ceil(n / k_max) PACKED
// frames filled front to back.
std::vector<Frame> serialize_dataset(const std::vector<uint64_t>& items,
                                     SerializeMode mode, int mtu,
                                     uint8_t routing_id);

std::string to_hex(const Frame& frame);
Frame from_hex(std::string_view hex);

}  // namespace p4mr

#endif
