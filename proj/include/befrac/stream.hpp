#pragma once

#include "befrac/digits.hpp"
#include "befrac/surd.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace befrac {

enum class ConstructionKind {
    Periodic,   // explicit period digits
    Frequency,  // period i^l j^(m-l) from a rational target l/m
    Beatty,     // digit i exactly where floor(n*a) increments
    NoFrequency,// blocks i^(2^n) j^(2^n)
    Witness,    // finite prefix + periodic tail (012) or (c)
    Triple,     // prescribed frequency triple, rational or surd
    Interleave, // filler everywhere except positions 3^n, which carry x
    Star,       // digits of x inserted after block 3^n of x0
    Complement  // digit-wise base-1-d of the inner stream
};

// Serializable descriptor: every stream is reproducible from its spec alone.
struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::Periodic;
    int base = 3;
    std::vector<int> digits;            // Periodic: period; Witness: prefix
    std::vector<int> preperiod;         // Periodic only, may be empty
    int i = 1, j = 0;                   // digit pair (Frequency/Beatty/NoFrequency)
    int filler = 0;                     // Interleave
    int tail_digit = 0;                 // Witness constant tail
    bool tail_cyclic = false;           // Witness: tail (012) instead of (tail_digit)
    Rational a;                         // Frequency target
    QuadraticSurd beatty_a;             // Beatty target
    std::array<QuadraticSurd, 3> tau;   // Triple target
    std::shared_ptr<const ConstructionSpec> x0; // Star: carrier stream
    std::shared_ptr<const ConstructionSpec> x;  // Star/Interleave/Complement: inner stream

    std::string to_string() const; // round-trips through parse_spec
};

ConstructionSpec parse_spec(const std::string& s);
void validate_spec(const ConstructionSpec& spec); // throws on out-of-contract fields

struct DigitCursor {
    virtual ~DigitCursor() = default;
    virtual int next() = 0;
};

// Pull-based unbounded digit source. Single consumer; clone() builds an
// independent cursor from the descriptor, positioned at the start.
class DigitStream {
  public:
    DigitStream(ConstructionSpec spec, std::unique_ptr<DigitCursor> cursor);

    int base() const { return spec_.base; }
    const ConstructionSpec& spec() const { return spec_; }
    int next() { return cursor_->next(); }
    std::vector<int> take(std::size_t n);
    DigitStream clone() const;

  private:
    ConstructionSpec spec_;
    std::unique_ptr<DigitCursor> cursor_;
};

DigitStream make_stream(const ConstructionSpec& spec);

} // namespace befrac
