#include "ipred/protosim.hpp"

#include <cmath>
#include <random>

namespace ipred {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 q) { return a * b % q; }
u64 addmod(u64 a, u64 b, u64 q) { return (a + b) % q; }
u64 submod(u64 a, u64 b, u64 q) { return (a + q - b % q) % q; }

u64 bits_of_field(u64 q) { return ceil_log2(q); }

/// w_j = prod_{k != j} (alpha - k) / (j - k) over F_q, points 0..len-1.
std::vector<u64> lagrange_weights(Index len, u64 alpha, u64 q) {
    std::vector<u64> w(static_cast<std::size_t>(len));
    for (Index j = 0; j < len; ++j) {
        u64 num = 1, den = 1;
        for (Index k = 0; k < len; ++k) {
            if (k == j) continue;
            num = mulmod(num, submod(alpha, static_cast<u64>(k), q), q);
            den = mulmod(den, submod(static_cast<u64>(j), static_cast<u64>(k), q), q);
        }
        w[static_cast<std::size_t>(j)] = mulmod(num, mod_inverse(den, q), q);
    }
    return w;
}

u64 block_value(const RsParams& p, std::span<const Bit> bits, Index block, const std::vector<u64>& w) {
    const Index bl = p.block_len();
    u64 acc = 0;
    for (Index j = 0; j < bl; ++j) {
        const Index pos = block * bl + j;
        if (pos < static_cast<Index>(bits.size()) && bits[static_cast<std::size_t>(pos)]) {
            acc = addmod(acc, w[static_cast<std::size_t>(j)], p.q);
        }
    }
    return acc;
}

/// Coefficients of the polynomial through (k, values[k]) for k = 0..m-1.
std::vector<u64> interpolate(const std::vector<u64>& values, u64 q) {
    const std::size_t m = values.size();
    std::vector<u64> master(m + 1, 0);
    master[0] = 1;
    for (std::size_t k = 0; k < m; ++k) {
        // master *= (X - k)
        for (std::size_t i = k + 1; i > 0; --i) master[i] = submod(master[i - 1], mulmod(master[i], k % q, q), q);
        master[0] = submod(0, mulmod(master[0], k % q, q), q);
    }
    std::vector<u64> out(m, 0);
    std::vector<u64> quot(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        // quot = master / (X - j) by synthetic division
        u64 carry = 0;
        for (std::size_t i = m; i > 0; --i) {
            carry = addmod(master[i], mulmod(carry, j % q, q), q);
            quot[i - 1] = carry;
        }
        u64 den = 1;
        for (std::size_t k = 0; k < m; ++k)
            if (k != j) den = mulmod(den, submod(j % q, k % q, q), q);
        const u64 scale = mulmod(values[j], mod_inverse(den, q), q);
        for (std::size_t i = 0; i < m; ++i) out[i] = addmod(out[i], mulmod(quot[i], scale, q), q);
    }
    return out;
}

u64 ip_of(std::span<const Bit> x, std::span<const Bit> y) {
    u64 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] & y[i];
    return acc;
}

void check_lengths(std::span<const Bit> x, std::span<const Bit> y) {
    if (x.size() != y.size()) throw std::invalid_argument("inputs have different lengths");
}

RsParams params_for_prime(const WrapperParams& p, u64 q) { return {p.n, p.T, q}; }

}  // namespace

void check_params(const RsParams& p) {
    if (p.n < 1 || p.T < 1) throw std::invalid_argument("protocol needs n >= 1 and T >= 1");
    if (p.q >= (u64{1} << 31)) throw std::invalid_argument("field size must stay below 2^31");
    if (!is_prime(p.q)) throw std::invalid_argument("field size q must be prime");
    if (p.q <= static_cast<u64>(2 * p.block_len())) throw std::invalid_argument("field size q must exceed 2 * block length");
}

std::uint64_t rs_block_eval(const RsParams& p, std::span<const Bit> x, Index block, std::uint64_t alpha) {
    return block_value(p, x, block, lagrange_weights(p.block_len(), alpha % p.q, p.q));
}

RsAdvice rs_honest_advice(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y) {
    check_params(p);
    check_lengths(x, y);
    std::vector<u64> values(static_cast<std::size_t>(p.advice_len()));
    for (std::size_t a = 0; a < values.size(); ++a) {
        const auto w = lagrange_weights(p.block_len(), a, p.q);
        u64 s = 0;
        for (Index i = 0; i < p.T; ++i) s = addmod(s, mulmod(block_value(p, x, i, w), block_value(p, y, i, w), p.q), p.q);
        values[a] = s;
    }
    return {interpolate(values, p.q)};
}

std::uint64_t rs_eval(const RsAdvice& advice, std::uint64_t alpha, std::uint64_t q) {
    u64 acc = 0;
    for (std::size_t i = advice.coeffs.size(); i > 0; --i) acc = addmod(mulmod(acc, alpha % q, q), advice.coeffs[i - 1] % q, q);
    return acc;
}

std::uint64_t rs_claimed_value(const RsParams& p, const RsAdvice& advice) {
    u64 acc = 0;
    for (Index j = 0; j < p.block_len(); ++j) acc = addmod(acc, rs_eval(advice, static_cast<u64>(j), p.q), p.q);
    return acc;
}

std::vector<std::uint64_t> rs_bob_message(const RsParams& p, std::span<const Bit> y, std::uint64_t alpha) {
    const auto w = lagrange_weights(p.block_len(), alpha % p.q, p.q);
    std::vector<u64> out(static_cast<std::size_t>(p.T));
    for (Index i = 0; i < p.T; ++i) out[static_cast<std::size_t>(i)] = block_value(p, y, i, w);
    return out;
}

bool rs_alice_check(const RsParams& p, std::span<const Bit> x, const RsAdvice& advice,
                    const std::vector<std::uint64_t>& message, std::uint64_t alpha) {
    if (static_cast<Index>(advice.coeffs.size()) > p.advice_len()) return false;
    for (u64 c : advice.coeffs)
        if (c >= p.q) return false;
    if (static_cast<Index>(message.size()) != p.T) return false;
    const auto w = lagrange_weights(p.block_len(), alpha % p.q, p.q);
    u64 s = 0;
    for (Index i = 0; i < p.T; ++i) {
        const u64 m = message[static_cast<std::size_t>(i)];
        if (m >= p.q) return false;
        s = addmod(s, mulmod(block_value(p, x, i, w), m, p.q), p.q);
    }
    return s == rs_eval(advice, alpha, p.q);
}

CostReport protocol_cost(const RsParams& p) {
    const u64 fb = bits_of_field(p.q);
    return {static_cast<u64>(p.advice_len()) * fb, fb, static_cast<u64>(p.T) * fb, 1};
}

RsOutcome rs_ip_mod_protocol(std::span<const Bit> x, std::span<const Bit> y, std::uint64_t q, Index T,
                             const std::optional<RsAdvice>& advice, std::uint64_t seed) {
    check_lengths(x, y);
    const RsParams p{static_cast<Index>(x.size()), T, q};
    check_params(p);
    const RsAdvice adv = advice ? *advice : rs_honest_advice(p, x, y);
    std::mt19937_64 rng(derive_seed(seed, 0));
    RsOutcome out;
    out.alpha = std::uniform_int_distribution<u64>(0, q - 1)(rng);
    out.accepted = rs_alice_check(p, x, adv, rs_bob_message(p, y, out.alpha), out.alpha);
    out.claimed = rs_claimed_value(p, adv);
    out.cost = protocol_cost(p);
    return out;
}

std::vector<std::uint64_t> rs_accepting_alphas(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                               const RsAdvice& advice) {
    check_params(p);
    check_lengths(x, y);
    std::vector<u64> out;
    for (u64 a = 0; a < p.q; ++a)
        if (rs_alice_check(p, x, advice, rs_bob_message(p, y, a), a)) out.push_back(a);
    return out;
}

RsAdvice rs_cheating_advice(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y, std::uint64_t claimed) {
    RsAdvice honest = rs_honest_advice(p, x, y);
    const u64 q = p.q;
    const u64 delta = submod(claimed % q, rs_claimed_value(p, honest), q);
    if (delta == 0) return honest;
    const Index bl = p.block_len();
    const Index max_roots = std::min<Index>(2 * bl - 2, static_cast<Index>(q) - bl);
    // add c * prod (X - r) with roots off the interpolation points; it changes the claimed sum
    // by c * sum_j prod (j - r) and leaves s untouched at the roots
    for (Index roots = max_roots; roots >= 0; --roots) {
        for (Index shift = 0; bl + shift + roots <= static_cast<Index>(q); ++shift) {
            std::vector<u64> poly{1};
            for (Index k = 0; k < roots; ++k) {
                const u64 r = static_cast<u64>(bl + shift + k);
                std::vector<u64> next(poly.size() + 1, 0);
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] = addmod(next[i + 1], poly[i], q);
                    next[i] = submod(next[i], mulmod(poly[i], r, q), q);
                }
                poly = std::move(next);
            }
            const u64 sum = rs_claimed_value(p, RsAdvice{poly});
            if (sum == 0) continue;
            const u64 c = mulmod(delta, mod_inverse(sum, q), q);
            RsAdvice out = honest;
            out.coeffs.resize(std::max(out.coeffs.size(), poly.size()), 0);
            for (std::size_t i = 0; i < poly.size(); ++i) out.coeffs[i] = addmod(out.coeffs[i], mulmod(c, poly[i], q), q);
            return out;
        }
    }
    throw std::logic_error("no cheating polynomial found");
}

std::uint64_t rs_best_cheater_accepts(const RsParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                      std::uint64_t budget) {
    check_params(p);
    const std::size_t m = static_cast<std::size_t>(p.advice_len());
    if (boost::multiprecision::pow(BigInt(p.q), static_cast<unsigned>(m)) > budget) {
        throw std::length_error("advice space exceeds the enumeration budget");
    }
    const u64 truth = ip_of(x, y) % p.q;
    std::vector<std::vector<u64>> messages;
    for (u64 a = 0; a < p.q; ++a) messages.push_back(rs_bob_message(p, y, a));
    RsAdvice adv{std::vector<u64>(m, 0)};
    u64 best = 0;
    while (true) {
        if (rs_claimed_value(p, adv) != truth) {
            u64 hits = 0;
            for (u64 a = 0; a < p.q; ++a) hits += rs_alice_check(p, x, adv, messages[a], a);
            best = std::max(best, hits);
        }
        std::size_t pos = 0;
        while (pos < m && ++adv.coeffs[pos] == p.q) adv.coeffs[pos++] = 0;
        if (pos == m) return best;
    }
}

double rs_soundness_bound(const RsParams& p) {
    return static_cast<double>(2 * p.block_len() - 2) / static_cast<double>(p.q);
}

Index rho_for(Index n) {
    Index rho = 1;
    while (boost::multiprecision::pow(BigInt(rho), static_cast<unsigned>(rho)) < n) ++rho;
    return rho;
}

Index default_block_count(Index n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    const u64 log_n = std::max<u64>(1, ceil_log2(static_cast<u64>(n)));
    const u64 log_log_n = std::max<u64>(1, ceil_log2(log_n));
    const u64 target = static_cast<u64>(n) * log_n;
    Index T = 1;
    while (static_cast<u64>(T) * static_cast<u64>(T) * log_log_n < target) ++T;
    return std::min(T, n);
}

WrapperParams make_wrapper_params(Index n, std::optional<Index> T, bool allow_extended) {
    WrapperParams p;
    p.n = n;
    p.T = T ? *T : default_block_count(n);
    if (p.T < 1 || p.T > n) throw std::invalid_argument("block count T must lie in [1, n]");
    p.rho = rho_for(n);
    const Index bl = (n + p.T - 1) / p.T;
    const auto count = static_cast<std::size_t>(10 * p.rho);
    // q > 4 * block_len - 4 keeps each base protocol's cheating rate below 1/2
    const u64 lo = std::max<u64>({static_cast<u64>(p.rho) + 1, static_cast<u64>(4 * bl - 3), static_cast<u64>(2 * bl + 1)});
    const u64 hi = static_cast<u64>(p.rho) * static_cast<u64>(p.rho);
    p.primes = smallest_primes_in(lo, hi, count);
    if (p.primes.size() < count) {
        if (!allow_extended) throw std::runtime_error("insufficient primes in [rho + 1, rho^2]");
        p.extended_range = true;
        p.primes = smallest_primes_in(lo, u64{1} << 31, count);
    }
    return p;
}

WrapperAdvice wrapper_honest_advice(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y) {
    WrapperAdvice adv{ip_of(x, y), {}};
    for (u64 q : p.primes) adv.packages.push_back(rs_honest_advice(params_for_prime(p, q), x, y));
    return adv;
}

WrapperAdvice wrapper_cheating_advice(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                      std::uint64_t z) {
    WrapperAdvice adv{z, {}};
    for (u64 q : p.primes) adv.packages.push_back(rs_cheating_advice(params_for_prime(p, q), x, y, z % q));
    return adv;
}

namespace {

bool z_consistent(const WrapperParams& p, const WrapperAdvice& adv) {
    if (adv.packages.size() != p.primes.size() || adv.z > static_cast<u64>(p.n)) return false;
    for (std::size_t i = 0; i < p.primes.size(); ++i) {
        const RsParams rs = params_for_prime(p, p.primes[i]);
        if (rs_claimed_value(rs, adv.packages[i]) != adv.z % p.primes[i]) return false;
    }
    return true;
}

CostReport wrapper_cost(const WrapperParams& p, u64 q) {
    const Index bl = (p.n + p.T - 1) / p.T;
    CostReport c;
    c.advice_bits = bits_for(static_cast<u64>(p.n) + 1);
    for (u64 pr : p.primes) c.advice_bits += static_cast<u64>(2 * bl - 1) * bits_of_field(pr);
    c.coin_bits = bits_for(p.primes.size()) + bits_of_field(q);
    c.message_bits = static_cast<u64>(p.T) * bits_of_field(q);
    c.rounds = 1;
    return c;
}

}  // namespace

WrapperOutcome ma_disj_improved(std::span<const Bit> x, std::span<const Bit> y, const WrapperParams& p,
                                const std::optional<WrapperAdvice>& advice, std::uint64_t seed) {
    check_lengths(x, y);
    if (static_cast<Index>(x.size()) != p.n) throw std::invalid_argument("input length differs from n");
    const WrapperAdvice adv = advice ? *advice : wrapper_honest_advice(p, x, y);
    WrapperOutcome out;
    out.z = adv.z;
    out.extended_range = p.extended_range;
    std::mt19937_64 rng(derive_seed(seed, 1));
    out.prime_index = std::uniform_int_distribution<std::size_t>(0, p.primes.size() - 1)(rng);
    const u64 q = p.primes[out.prime_index];
    out.alpha = std::uniform_int_distribution<u64>(0, q - 1)(rng);
    out.cost = wrapper_cost(p, q);
    out.z_consistent = z_consistent(p, adv);
    if (!out.z_consistent) return out;
    const RsParams rs = params_for_prime(p, q);
    out.accepted = rs_alice_check(rs, x, adv.packages[out.prime_index], rs_bob_message(rs, y, out.alpha), out.alpha);
    return out;
}

Rational wrapper_accept_probability(const WrapperParams& p, std::span<const Bit> x, std::span<const Bit> y,
                                    const WrapperAdvice& advice) {
    if (!z_consistent(p, advice)) return 0;
    Rational total = 0;
    for (std::size_t i = 0; i < p.primes.size(); ++i) {
        const RsParams rs = params_for_prime(p, p.primes[i]);
        total += Rational(rs_accepting_alphas(rs, x, y, advice.packages[i]).size(), p.primes[i]);
    }
    return total / p.primes.size();
}

Rational bad_prime_fraction(const WrapperParams& p, std::uint64_t ip, std::uint64_t z) {
    const u64 gap = ip > z ? ip - z : z - ip;
    std::size_t bad = 0;
    for (u64 q : p.primes) bad += gap % q == 0;
    return Rational(bad, p.primes.size());
}

CostReport protocol_cost(const WrapperParams& p) { return wrapper_cost(p, p.primes.back()); }

// ---- toy protocol and advice enumeration ----

double ToyProtocol::soundness() const {
    const double per = std::min(1.0, static_cast<double>(2 * rs.block_len() - 2) *
                                         std::ceil(std::ldexp(1.0, static_cast<int>(field_bits)) / static_cast<double>(rs.q)) /
                                         std::ldexp(1.0, static_cast<int>(field_bits)));
    return std::pow(per, static_cast<double>(reps));
}

ToyProtocol make_toy_protocol(Index d, double eps, Index reps) {
    if (d < 1) throw std::invalid_argument("toy protocol needs d >= 1");
    if (reps < 0) throw std::invalid_argument("repetition count must be non-negative");
    ToyProtocol proto;
    proto.d = d;
    const Index T = (d + 1) / 2;
    const Index bl = (d + T - 1) / T;
    u64 q = static_cast<u64>(std::max<Index>(d, 2 * bl)) + 1;
    while (!is_prime(q)) ++q;
    proto.rs = {d, T, q};
    proto.field_bits = bits_of_field(q);
    if (reps > 0) {
        proto.reps = reps;
    } else {
        if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
        proto.reps = 1;
        while (proto.soundness() > eps && proto.reps < 16) ++proto.reps;
    }
    return proto;
}

namespace {

struct ToyAdvice {
    bool valid = false;
    RsAdvice poly;
};

ToyAdvice decode_toy_advice(const ToyProtocol& proto, std::uint64_t advice) {
    ToyAdvice out;
    const u64 mask = (u64{1} << proto.field_bits) - 1;
    for (Index k = 0; k < proto.rs.advice_len(); ++k) {
        const u64 c = (advice >> (static_cast<u64>(k) * proto.field_bits)) & mask;
        if (c >= proto.rs.q) return out;
        out.poly.coeffs.push_back(c);
    }
    // the advice asserts x.y = 0
    out.valid = rs_claimed_value(proto.rs, out.poly) == 0;
    return out;
}

u64 alpha_of(const ToyProtocol& proto, u64 coins, Index rep) {
    const u64 mask = (u64{1} << proto.field_bits) - 1;
    return ((coins >> (static_cast<u64>(rep) * proto.field_bits)) & mask) % proto.rs.q;
}

u64 toy_bob_message(const ToyProtocol& proto, std::span<const Bit> y, u64 coins) {
    u64 msg = 0, shift = 0;
    for (Index rep = 0; rep < proto.reps; ++rep) {
        for (u64 v : rs_bob_message(proto.rs, y, alpha_of(proto, coins, rep))) {
            msg |= v << shift;
            shift += proto.field_bits;
        }
    }
    return msg;
}

bool toy_alice_accepts(const ToyProtocol& proto, std::span<const Bit> x, const ToyAdvice& adv, u64 coins, u64 msg) {
    if (!adv.valid) return false;
    const u64 mask = (u64{1} << proto.field_bits) - 1;
    u64 shift = 0;
    for (Index rep = 0; rep < proto.reps; ++rep) {
        std::vector<u64> m(static_cast<std::size_t>(proto.rs.T));
        for (auto& v : m) {
            v = (msg >> shift) & mask;
            shift += proto.field_bits;
        }
        if (!rs_alice_check(proto.rs, x, adv.poly, m, alpha_of(proto, coins, rep))) return false;
    }
    return true;
}

}  // namespace

std::uint64_t toy_accept_count(const ToyProtocol& proto, std::span<const Bit> x, std::span<const Bit> y,
                               std::uint64_t advice) {
    const ToyAdvice adv = decode_toy_advice(proto, advice);
    u64 count = 0;
    for (u64 w = 0; w < (u64{1} << proto.coin_bits()); ++w) count += toy_alice_accepts(proto, x, adv, w, toy_bob_message(proto, y, w));
    return count;
}

std::uint64_t toy_honest_advice(const ToyProtocol& proto, std::span<const Bit> x, std::span<const Bit> y) {
    const RsAdvice s = rs_honest_advice(proto.rs, x, y);
    u64 out = 0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) out |= s.coeffs[k] << (k * proto.field_bits);
    return out;
}

Vector<Bit> toy_alice_vector(const ToyProtocol& proto, std::span<const Bit> x, std::uint64_t advice) {
    const ToyAdvice adv = decode_toy_advice(proto, advice);
    const u64 coins = u64{1} << proto.coin_bits(), msgs = u64{1} << proto.message_bits();
    Vector<Bit> out = Vector<Bit>::Zero(static_cast<Index>(coins * msgs));
    if (!adv.valid) return out;
    for (u64 w = 0; w < coins; ++w)
        for (u64 m = 0; m < msgs; ++m) out(static_cast<Index>(w * msgs + m)) = toy_alice_accepts(proto, x, adv, w, m);
    return out;
}

Vector<Bit> toy_bob_vector(const ToyProtocol& proto, std::span<const Bit> y) {
    const u64 coins = u64{1} << proto.coin_bits(), msgs = u64{1} << proto.message_bits();
    Vector<Bit> out = Vector<Bit>::Zero(static_cast<Index>(coins * msgs));
    for (u64 w = 0; w < coins; ++w) out(static_cast<Index>(w * msgs + toy_bob_message(proto, y, w))) = 1;
    return out;
}

GapFamily ov_to_maxip_gap(const BooleanInstance& inst, double eps, Index reps, std::uint64_t max_advice_bits,
                          std::uint64_t max_dimension_bits) {
    validate(inst);
    GapFamily fam{make_toy_protocol(inst.dim(), eps, reps), {}, 0, 0.0};
    const ToyProtocol& proto = fam.proto;
    if (proto.advice_bits() > max_advice_bits) throw std::length_error("advice space exceeds its budget");
    if (proto.coin_bits() + proto.message_bits() > max_dimension_bits) throw std::length_error("gap vectors exceed the dimension budget");
    fam.threshold = u64{1} << proto.coin_bits();
    fam.soundness = proto.soundness();
    const Index dim = Index{1} << (proto.coin_bits() + proto.message_bits());
    auto row = [](const BooleanVectorSet& m, Index i) {
        return std::vector<Bit>(m.row(i).data(), m.row(i).data() + m.cols());
    };
    BooleanVectorSet b(inst.b.rows(), dim);
    for (Index j = 0; j < inst.b.rows(); ++j) b.row(j) = toy_bob_vector(proto, row(inst.b, j)).transpose();
    for (u64 adv = 0; adv < (u64{1} << proto.advice_bits()); ++adv) {
        BooleanVectorSet a(inst.a.rows(), dim);
        for (Index i = 0; i < inst.a.rows(); ++i) a.row(i) = toy_alice_vector(proto, row(inst.a, i), adv).transpose();
        fam.instances.push_back({std::move(a), b});
    }
    return fam;
}

// ---- NP.UPP family ----

namespace {

Vector<BigInt> outer_flat(const Vector<BigInt>& v, bool negate) {
    const Index m = v.size();
    Vector<BigInt> out(m * m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) out(i * m + j) = negate ? BigInt(-(v(i) * v(j))) : BigInt(v(i) * v(j));
    return out;
}

Vector<BigInt> extend(const Vector<BigInt>& psi, const BigInt& last) {
    Vector<BigInt> out(psi.size() + 1);
    out.head(psi.size()) = psi;
    out(psi.size()) = last;
    return out;
}

}  // namespace

Vector<BigInt> NpUppFamily::alice(std::size_t, const Vector<Bit>& x) const {
    return outer_flat(extend(encode(red, x), BigInt(1)), false);
}

Vector<BigInt> NpUppFamily::bob(std::size_t i, const Vector<Bit>& y) const {
    return outer_flat(extend(encode(red, y), BigInt(-thresholds.at(i))), true);
}

NpUppFamily np_upp_family(Index d, Index ell, std::size_t budget) {
    if (d < 1) throw std::invalid_argument("family needs d >= 1");
    NpUppFamily fam{build_reduction((d + ell - 1) / ell, ell), {}};
    fam.thresholds = certificate_set(fam.red, budget);
    return fam;
}

Rational upp_simulate(const Vector<Rational>& u, const Vector<Rational>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vectors have different lengths");
    Rational dot = 0, l1 = 0, linf = 0;
    for (Index i = 0; i < u.size(); ++i) {
        dot += u(i) * v(i);
        l1 += abs(v(i));
        linf = std::max<Rational>(linf, abs(u(i)));
    }
    if (l1 == 0 || linf == 0) throw std::invalid_argument("upp_simulate needs non-zero vectors");
    return Rational(1, 2) + dot / (2 * l1 * linf);
}

Rational upp_simulate(const Vector<BigInt>& u, const Vector<BigInt>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vectors have different lengths");
    BigInt dot = 0, l1 = 0, linf = 0;
    for (Index i = 0; i < u.size(); ++i) {
        dot += u(i) * v(i);
        l1 += abs(v(i));
        linf = std::max<BigInt>(linf, abs(u(i)));
    }
    if (l1 == 0 || linf == 0) throw std::invalid_argument("upp_simulate needs non-zero vectors");
    return Rational(1, 2) + Rational(dot, 2 * l1 * linf);
}

bool upp_reduction_decide(const BooleanInstance& inst, Index ell) {
    validate(inst);
    if (inst.a.rows() == 0 || inst.b.rows() == 0) throw std::invalid_argument("empty instance");
    const NpUppFamily fam = np_upp_family(inst.dim(), ell);
    std::vector<Vector<BigInt>> alice;
    for (Index r = 0; r < inst.a.rows(); ++r) alice.push_back(fam.alice(0, inst.a.row(r).transpose()));
    const Rational half(1, 2);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (Index c = 0; c < inst.b.rows(); ++c) {
            const Vector<BigInt> v = fam.bob(i, inst.b.row(c).transpose());
            // a zero message vector leaves Alice at exactly 1/2
            if ((v.array() == 0).all()) return true;
            for (const auto& u : alice)
                if (upp_simulate(u, v) >= half) return true;
        }
    }
    return false;
}

}  // namespace ipred
