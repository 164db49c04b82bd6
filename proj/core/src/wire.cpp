#include "p4mr/wire.hpp"

#include <cctype>

#include "p4mr/errors.hpp"

namespace p4mr {

void put_u64_be(Frame& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<uint8_t>(v >> shift));
}

uint64_t get_u64_be(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | p[i];
  return v;
}

Frame encode_header(const P4mrHeader& h) {
  Frame out;
  out.reserve(kHeaderBytes);
  put_u64_be(out, kPreamble);
  out.push_back(h.app_id);
  out.push_back(h.routing_id);
  out.push_back(h.collection_id);
  put_u64_be(out, h.data);
  return out;
}

P4mrHeader decode_header(const Frame& frame) {
  if (frame.size() < static_cast<size_t>(kHeaderBytes))
    throw Error(ErrKind::TruncatedFrame,
                "frame of " + std::to_string(frame.size()) +
                    " bytes, header needs " + std::to_string(kHeaderBytes));
  if (get_u64_be(frame.data()) != kPreamble)
    throw Error(ErrKind::BadPreamble, "first 8 bytes are not the preamble");
  P4mrHeader h;
  h.app_id = frame[8];
  h.routing_id = frame[9];
  h.collection_id = frame[10];
  h.data = get_u64_be(frame.data() + 11);
  return h;
}

Frame make_unit(uint8_t routing_id, uint64_t value, uint8_t collection_id) {
  // receivers read the header's data field; the payload copy brings the
  // frame to its physical header+item size
  Frame out = encode_header({kAppUnit, routing_id, collection_id, value});
  put_u64_be(out, value);
  return out;
}

Frame make_packed(uint8_t routing_id, const std::vector<uint64_t>& items) {
  Frame out = encode_header({kAppPacked, routing_id, 0, items.size()});
  out.reserve(kHeaderBytes + items.size() * kItemBytes);
  for (uint64_t item : items) put_u64_be(out, item);
  return out;
}

Frame make_collect(uint8_t routing_id, int origin_label) {
  if (origin_label < 0 || origin_label + 1 > 255)
    throw Error(ErrKind::ZeroOrigin,
                "label " + std::to_string(origin_label) +
                    " has no collection_id encoding");
  return encode_header(
      {kAppCollect, routing_id, static_cast<uint8_t>(origin_label + 1), 0});
}

Frame make_result(uint8_t routing_id, uint64_t value, uint8_t collection_id) {
  return encode_header({kAppResult, routing_id, collection_id, value});
}

PackedView decode_packed(const Frame& frame) {
  PackedView v;
  v.header = decode_header(frame);
  if (v.header.app_id != kAppPacked)
    throw Error(ErrKind::TruncatedFrame, "not a PACKED frame");
  size_t want = kHeaderBytes + v.header.data * kItemBytes;
  if (frame.size() != want)
    throw Error(ErrKind::TruncatedFrame,
                "PACKED advertises " + std::to_string(v.header.data) +
                    " items (" + std::to_string(want) + " bytes) but frame has " +
                    std::to_string(frame.size()));
  v.items.reserve(v.header.data);
  for (uint64_t i = 0; i < v.header.data; ++i)
    v.items.push_back(get_u64_be(frame.data() + kHeaderBytes + i * kItemBytes));
  return v;
}

uint64_t word_item(std::string_view word) {
  if (word.size() > 8)
    throw Error(ErrKind::WordTooLong,
                "\"" + std::string(word) + "\" exceeds 8 bytes");
  uint64_t v = 0;
  for (size_t i = 0; i < word.size(); ++i)
    v |= static_cast<uint64_t>(static_cast<uint8_t>(word[i]))
         << (56 - 8 * static_cast<int>(i));
  return v;
}

std::string item_word(uint64_t item) {
  std::string out;
  for (int shift = 56; shift >= 0; shift -= 8) {
    char c = static_cast<char>(item >> shift & 0xff);
    if (c == '\0') break;
    out.push_back(c);
  }
  return out;
}

uint64_t fnv1a64(const uint8_t* data, size_t len) {
  uint64_t h = 14695981039346656037ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t hash_item(uint64_t item) {
  uint8_t bytes[8];
  for (int i = 0; i < 8; ++i)
    bytes[i] = static_cast<uint8_t>(item >> (56 - 8 * i));
  return fnv1a64(bytes, 8);
}

int max_items_per_frame(int mtu) {
  int k = (mtu - kHeaderBytes) / kItemBytes;
  if (k < 1)
    throw Error(ErrKind::MtuTooSmall,
                "mtu " + std::to_string(mtu) + " cannot carry one item");
  return k;
}

std::vector<Frame> serialize_dataset(const std::vector<uint64_t>& items,
                                     SerializeMode mode, int mtu,
                                     uint8_t routing_id) {
  std::vector<Frame> frames;
  if (mode == SerializeMode::PerItem) {
    frames.reserve(items.size());
    for (uint64_t item : items) frames.push_back(make_unit(routing_id, item));
    return frames;
  }
  size_t k_max = max_items_per_frame(mtu);
  for (size_t at = 0; at < items.size(); at += k_max) {
    size_t end = std::min(items.size(), at + k_max);
    frames.push_back(make_packed(
        routing_id, std::vector<uint64_t>(items.begin() + at, items.begin() + end)));
  }
  return frames;
}

std::string to_hex(const Frame& frame) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  out.reserve(frame.size() * 2);
  for (uint8_t b : frame) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Frame from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrKind::IoError, std::string("bad hex digit '") + c + "'");
  };
  if (hex.size() % 2)
    throw Error(ErrKind::IoError, "odd-length hex string");
  Frame out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return out;
}

}  // namespace p4mr
