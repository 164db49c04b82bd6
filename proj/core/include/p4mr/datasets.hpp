#ifndef P4MR_DATASETS_HPP
#define P4MR_DATASETS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace p4mr {

std::string read_text_file(const std::string& path);   // IoError on failure
void write_text_file(const std::string& path, const std::string& content);

// Whitespace-separated decimal unsigned integers. Anything else → IoError.
std::vector<uint64_t> read_integers(const std::string& path);
std::vector<uint64_t> parse_integers(const std::string& text,
                                     const std::string& origin);

// Whitespace-separated tokens, each truncated to its first 8 bytes and
// encoded as a wire item. The host-side oracle must tokenize the same way.
std::vector<uint64_t> read_words(const std::string& path);
std::vector<uint64_t> parse_words(const std::string& text);

// Deterministic synthetic data. Raw mt19937_64 output is reduced by
// modulus (not std::uniform_int_distribution, whose mapping varies by
// implementation), so streams are identical on every platform.
std::vector<uint64_t> gen_integers(size_t count, uint64_t seed);
std::vector<uint64_t> gen_words(size_t count, uint64_t seed, int vocab = 200);

std::string integers_to_text(const std::vector<uint64_t>& items);
std::string words_to_text(const std::vector<uint64_t>& items);

}  // namespace p4mr

#endif
