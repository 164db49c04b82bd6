#include "p4mr/datasets.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "p4mr/errors.hpp"
#include "p4mr/wire.hpp"

namespace p4mr {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrKind::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw Error(ErrKind::IoError, "read failure on " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrKind::IoError, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out)
    throw Error(ErrKind::IoError, "write failure on " + path);
}

std::vector<uint64_t> parse_integers(const std::string& text,
                                     const std::string& origin) {
  std::vector<uint64_t> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    uint64_t v = 0;
    size_t used = 0;
    try {
      v = std::stoull(token, &used, 10);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != token.size())
      throw Error(ErrKind::IoError,
                  origin + ": not an unsigned integer: \"" + token + "\"");
    out.push_back(v);
  }
  return out;
}

std::vector<uint64_t> read_integers(const std::string& path) {
  return parse_integers(read_text_file(path), path);
}

std::vector<uint64_t> parse_words(const std::string& text) {
  std::vector<uint64_t> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.size() > 8) token.resize(8);
    out.push_back(word_item(token));
  }
  return out;
}

std::vector<uint64_t> read_words(const std::string& path) {
  return parse_words(read_text_file(path));
}

std::vector<uint64_t> gen_integers(size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(rng() % 1000000);
  return out;
}

std::vector<uint64_t> gen_words(size_t count, uint64_t seed, int vocab) {
  if (vocab < 1) vocab = 1;
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i)
    out.push_back(word_item("w" + std::to_string(rng() % vocab)));
  return out;
}

std::string integers_to_text(const std::vector<uint64_t>& items) {
  std::ostringstream out;
  for (uint64_t v : items) out << v << '\n';
  return out.str();
}

std::string words_to_text(const std::vector<uint64_t>& items) {
  std::ostringstream out;
  for (uint64_t v : items) out << item_word(v) << '\n';
  return out.str();
}

}  // namespace p4mr
