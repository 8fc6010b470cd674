#pragma once

#include <cstdint>
#include <stdexcept>

namespace ncabp {

// GF(p) for a prime p < 2^16. Elements are least nonnegative residues in
// [0, p). Inverse tables are memoized per modulus, so copies are trivially
// cheap and all operations are pure.
class PrimeField {
   public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t(a) + b); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t(a) + p_ - b); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t(a) * b); }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t inv(std::uint32_t a) const;

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.p_ != b.p_; }

    static bool is_prime(std::uint32_t p);

   private:
    std::uint32_t p_;
    const std::uint32_t* inv_table_;  // p entries, index 0 unused
};

}  // namespace ncabp
