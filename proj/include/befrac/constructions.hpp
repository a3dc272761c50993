#pragma once

#include "befrac/stream.hpp"

namespace befrac {

// Periodic stream i^l j^(m-l) realizing digit-i frequency a = l/m; a = 0 or 1
// degenerates to the constant-(j) or constant-(i) stream. Base 3.
DigitStream periodic_with_frequency(const Rational& a, int i, int j);

// Exact floor-sequence stream: digit i at position n+1 iff floor((n+1)a) >
// floor(n*a), so N_i(x,n) = floor(n*a) for every n. Requires irrational a in (0,1).
DigitStream beatty_construction(const QuadraticSurd& a, int i, int j);

// Alternating blocks i^(2^n) j^(2^n), n = 0,1,2,... whose digit-i frequency
// oscillates between 2/3 and 1/2 along k_n and k'_n.
DigitStream no_frequency_example(int i, int j);

enum class WitnessTail { Cyclic012, Const };

// First n digits of the given prefix, then tail (012) or (tail_digit).
DigitString discontinuity_witness(const std::vector<int>& x0_prefix, std::size_t n,
                                  WitnessTail tail, int tail_digit = 0);

// Prescribed frequency triple. Rational targets produce the periodic stream
// 0^p0 1^p1 2^p2; irrational targets use the largest-remainder rule
// argmax_i (n*tau_i - N_i(n-1)) with ties to the smaller digit, which keeps
// |N_i(n) - n*tau_i| <= 1.
DigitStream triple_target(const std::array<Rational, 3>& tau);
DigitStream triple_target(const std::array<QuadraticSurd, 3>& tau);

// Positions 3^n carry the digits of x, everything else is the filler digit.
DigitStream interleave_injection(DigitStream x, int filler, int base);

// Insert digit n of x immediately after block 3^n of x0, where blocks are
// maximal (possibly empty) runs cycling through expected digits 0,1,2,0,...
// The inserted digit lands at output position s_{3^n} + n.
DigitStream star_interleave(DigitStream x0, DigitStream x);

DigitStream complement_stream(DigitStream x);

// --- exact count helpers ---

// Digit counts of no_frequency_example at prefix length k, by walking the
// block structure; O(log k), no digit materialization.
struct NoFreqCounts {
    long long n_i = 0, n_j = 0;
};
NoFreqCounts no_frequency_counts(long long k);
long long no_frequency_kn(int n);  // k_n  = 2^(n+1) + 2^n - 2
long long no_frequency_kpn(int n); // k'_n = 2^(n+2) - 2

// s_1..s_max for the star decomposition of a prefix: s_k = number of x0
// digits inside the first k blocks. Only blocks whose end is visible within
// the prefix are reported (a trailing run may still be open).
std::vector<long long> block_boundaries(const std::vector<int>& x0_prefix,
                                        std::size_t max_blocks);

} // namespace befrac
