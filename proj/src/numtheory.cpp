#include "ipred/numtheory.hpp"

#include <cmath>

namespace ipred {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f <= n / f; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> smallest_primes_in(std::uint64_t lo, std::uint64_t hi, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi && out.size() < count; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 result = 1 % mod;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) result = (result * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("value not invertible modulo " + std::to_string(mod));
    if (t < 0) t += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_of(const BigInt& v, std::uint64_t mod) {
    BigInt r = v % mod;
    if (r < 0) r += mod;
    return r.convert_to<std::uint64_t>();
}

CrtBasis::CrtBasis(std::vector<std::uint64_t> mods) : moduli(std::move(mods)), product(1) {
    for (auto m : moduli) product *= m;
    basis.reserve(moduli.size());
    for (auto m : moduli) {
        const BigInt rest = product / m;
        basis.push_back(rest * mod_inverse(mod_of(rest, m), m));
    }
}

std::uint64_t ceil_log2(std::uint64_t x) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < x) ++bits;
    return bits;
}

std::uint64_t bits_for(std::uint64_t x) { return x <= 1 ? 0 : ceil_log2(x); }

int log_star(double m) {
    int count = 0;
    while (m > 1.0) {
        m = std::log2(m);
        ++count;
    }
    return count;
}

}  // namespace ipred
