#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rzdg {

enum class ErrorKind {
    invalid_argument, // bad modulus, bad literal, element shape mismatch
    capacity,         // ring order or vertex count above the configured cap
    infeasible,       // instance too large for the requested method, or budget gone
    hypothesis,       // mathematical precondition of the operation not met
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Largest ring order we are willing to materialize. Override with RZDG_MAX_ORDER.
std::uint64_t max_ring_order();

// One local factor Z_{p^k}.
struct Factor {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t modulus = 0; // p^k
};

// Element of a product of Z_{p^k} factors, one residue per factor.
struct RingElement {
    std::vector<std::uint32_t> residues;
    bool operator==(const RingElement&) const = default;
};

// A finite commutative ring with unity, represented as a product of local
// factors Z_{p^k}. Two notations exist for the same underlying data:
//
//   Z_n            factors are the prime-power decomposition of n, elements
//                  print as plain integers (CRT position in [0, n))
//   Z_a x Z_b ...  explicit product, elements print as residue tuples
//
// The canonical element order is by integer encoding: the CRT integer for
// Z_n rings, the big-endian mixed-radix value of the residue tuple for
// explicit products. All set-valued results are sorted by this encoding.
class RingSpec {
public:
    enum class Notation { modulus, product };

    static RingSpec from_modulus(std::uint64_t n);
    static RingSpec product(const std::vector<RingSpec>& parts);

    const std::vector<Factor>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }
    Notation notation() const { return notation_; }
    const std::string& name() const { return name_; }
    bool local() const { return factors_.size() == 1; }

    RingElement zero() const;
    RingElement one() const;
    RingElement element_at(std::uint64_t index) const;
    std::uint64_t index_of(const RingElement& x) const;
    std::string label(const RingElement& x) const;

    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement neg(const RingElement& a) const;

    bool is_zero(const RingElement& x) const;
    bool is_one(const RingElement& x) const;
    bool is_unit(const RingElement& x) const;

    // Fast test: x is a zero-divisor iff some residue shares a prime factor
    // with its modulus. 0 counts as a zero-divisor.
    bool is_zero_divisor(const RingElement& x) const;
    // Definitional test: exists y != 0 with xy = 0. Linear scan over the ring.
    bool is_zero_divisor_definitional(const RingElement& x) const;
    // Definitional unit test: exists y with xy = 1.
    bool is_unit_definitional(const RingElement& x) const;

    // Z(R) including 0, in canonical order.
    std::vector<RingElement> zero_divisor_set() const;
    // beta = |Z(R)|, by the unit-count formula.
    std::uint64_t beta() const;

    // True iff s contains 0 and is closed under addition, negation and
    // multiplication by every ring element.
    bool subset_is_ideal(const std::vector<RingElement>& s) const;

    struct PrimeIdeal {
        std::vector<RingElement> elements;
        std::uint64_t size = 0;
        std::uint32_t p = 0; // the factor prime this ideal projects onto
    };
    // One prime ideal per factor: P_j = { x : x_j = 0 mod p_j }. Each ideal is
    // re-verified definitionally (proper, and ab in P => a in P or b in P)
    // while the order is at most 10^4; larger rings trust the construction.
    std::vector<PrimeIdeal> prime_ideals() const;

    // True iff Z(R) is an ideal of R. Definitional check up to order 10^4,
    // structural (single local factor) above.
    bool zero_divisors_form_ideal() const;

    // alpha = |R / Z(R)|. Requires Z(R) to be an ideal.
    std::uint64_t alpha() const;

private:
    RingSpec() = default;
    void check_element(const RingElement& x) const;

    std::vector<Factor> factors_;
    std::uint64_t order_ = 0;
    Notation notation_ = Notation::modulus;
    std::string name_;
    std::vector<std::uint64_t> crt_basis_; // modulus notation only
};

} // namespace rzdg
