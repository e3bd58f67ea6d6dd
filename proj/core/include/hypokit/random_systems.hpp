#pragma once

// Seeded random matrices for property corpora.

#include <cstdint>
#include <random>
#include <vector>

#include "hypokit/linalg.hpp"

namespace hypokit {

/// Independent mt19937_64 stream derived from (seed, stream) by splitmix64.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

CMatrix random_gaussian(std::mt19937_64& rng, int rows, int cols, bool complex_entries);

/// B_H of rank `rank` with eigenvalues in [0.5, 2], plus a random skew part.
/// Generic index is ceil(n/rank) - 1.
CMatrix random_semidissipative(std::mt19937_64& rng, int n, int rank, bool complex_entries);

struct CorpusEntry {
  int id = 0;
  int expected_index = 0;  // generic index of the construction
  CMatrix B;
};

/// Dimensions 2..6 covering generic indices 0..3.
std::vector<CorpusEntry> index_corpus(std::uint64_t seed, int count);

/// Stable B = S D S^{-1} whose dominant eigenvalues (smallest real part) are semi-simple.
CMatrix random_stable_semisimple(std::mt19937_64& rng, int n);

}  // namespace hypokit
