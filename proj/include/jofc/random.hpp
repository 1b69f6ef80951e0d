#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <vector>

namespace jofc {

/// All randomness in the library flows through a 64-bit Mersenne Twister.
using Rng = std::mt19937_64;

/// Independent stream keyed by a base seed plus integer coordinates
/// (cell index, replicate index, ...). Streams depend only on the keys, so
/// results do not depend on the order in which work is scheduled.
template <std::integral... Keys>
Rng make_stream(std::uint64_t seed, Keys... keys)
{
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  (push(static_cast<std::uint64_t>(keys)), ...);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

} // namespace jofc
