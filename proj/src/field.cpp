#include "ncabp/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace ncabp {

namespace {

std::uint32_t egcd_inverse(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on (a, p); a in [1, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

const std::uint32_t* inverse_table_for(std::uint32_t p) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<std::vector<std::uint32_t>>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = tables[p];
    if (!slot) {
        slot = std::make_unique<std::vector<std::uint32_t>>(p, 0);
        for (std::uint32_t a = 1; a < p; ++a) (*slot)[a] = egcd_inverse(a, p);
    }
    return slot->data();
}

}  // namespace

bool PrimeField::is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (std::uint32_t(1) << 16))
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is too large (need < 2^16)");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    inv_table_ = inverse_table_for(p);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p_) + ")");
    return inv_table_[a];
}

}  // namespace ncabp
