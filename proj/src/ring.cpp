#include "rzdg/ring.hpp"

#include <algorithm>
#include <cstdlib>

namespace rzdg {

namespace {

std::uint64_t env_limit(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return fallback;
}

std::vector<Factor> factorize(std::uint64_t n) {
    std::vector<Factor> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        Factor f{static_cast<std::uint32_t>(p), 0, 1};
        while (n % p == 0) {
            n /= p;
            f.k += 1;
            f.modulus *= static_cast<std::uint32_t>(p);
        }
        out.push_back(f);
    }
    if (n > 1)
        out.push_back(Factor{static_cast<std::uint32_t>(n), 1, static_cast<std::uint32_t>(n)});
    return out;
}

// modular inverse of a mod m for coprime a, m
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace

std::uint64_t max_ring_order() {
    return env_limit("RZDG_MAX_ORDER", 1'000'000);
}

RingSpec RingSpec::from_modulus(std::uint64_t n) {
    if (n < 2 || n > max_ring_order())
        throw Error(ErrorKind::invalid_argument,
                    "invalid modulus " + std::to_string(n) + " (want 2 <= n <= " +
                        std::to_string(max_ring_order()) + ")");
    RingSpec r;
    r.factors_ = factorize(n); // trial division yields factors sorted by p
    r.order_ = n;
    r.notation_ = Notation::modulus;
    r.name_ = "Z" + std::to_string(n);
    for (const Factor& f : r.factors_) {
        std::uint64_t m = n / f.modulus;
        std::uint64_t inv = mod_inverse(m % f.modulus, f.modulus);
        r.crt_basis_.push_back(m * inv % n);
    }
    return r;
}

RingSpec RingSpec::product(const std::vector<RingSpec>& parts) {
    if (parts.empty())
        throw Error(ErrorKind::invalid_argument, "ring product needs at least one part");
    if (parts.size() == 1) return parts.front();
    RingSpec r;
    r.order_ = 1;
    r.notation_ = Notation::product;
    for (const RingSpec& part : parts) {
        if (r.order_ > max_ring_order() / part.order())
            throw Error(ErrorKind::capacity,
                        "ring order exceeds cap " + std::to_string(max_ring_order()));
        r.order_ *= part.order();
        r.factors_.insert(r.factors_.end(), part.factors_.begin(), part.factors_.end());
        if (!r.name_.empty()) r.name_ += "x";
        r.name_ += part.name();
    }
    return r;
}

void RingSpec::check_element(const RingElement& x) const {
    if (x.residues.size() != factors_.size())
        throw Error(ErrorKind::invalid_argument, "element shape mismatch for " + name_);
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (x.residues[i] >= factors_[i].modulus)
            throw Error(ErrorKind::invalid_argument, "residue out of range for " + name_);
}

RingElement RingSpec::zero() const {
    return RingElement{std::vector<std::uint32_t>(factors_.size(), 0)};
}

RingElement RingSpec::one() const {
    return RingElement{std::vector<std::uint32_t>(factors_.size(), 1)};
}

RingElement RingSpec::element_at(std::uint64_t index) const {
    if (index >= order_)
        throw Error(ErrorKind::invalid_argument, "element index out of range");
    RingElement x;
    x.residues.resize(factors_.size());
    if (notation_ == Notation::modulus) {
        for (std::size_t i = 0; i < factors_.size(); ++i)
            x.residues[i] = static_cast<std::uint32_t>(index % factors_[i].modulus);
    } else {
        for (std::size_t i = factors_.size(); i-- > 0;) {
            x.residues[i] = static_cast<std::uint32_t>(index % factors_[i].modulus);
            index /= factors_[i].modulus;
        }
    }
    return x;
}

std::uint64_t RingSpec::index_of(const RingElement& x) const {
    check_element(x);
    if (notation_ == Notation::modulus) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            acc = (acc + x.residues[i] * crt_basis_[i]) % order_;
        return acc;
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        acc = acc * factors_[i].modulus + x.residues[i];
    return acc;
}

std::string RingSpec::label(const RingElement& x) const {
    if (notation_ == Notation::modulus) return std::to_string(index_of(x));
    std::string out = "(";
    for (std::size_t i = 0; i < x.residues.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(x.residues[i]);
    }
    out += ")";
    return out;
}

RingElement RingSpec::add(const RingElement& a, const RingElement& b) const {
    check_element(a);
    check_element(b);
    RingElement out;
    out.residues.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out.residues[i] = (a.residues[i] + b.residues[i]) % factors_[i].modulus;
    return out;
}

RingElement RingSpec::mul(const RingElement& a, const RingElement& b) const {
    check_element(a);
    check_element(b);
    RingElement out;
    out.residues.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out.residues[i] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a.residues[i]) * b.residues[i] % factors_[i].modulus);
    return out;
}

RingElement RingSpec::neg(const RingElement& a) const {
    check_element(a);
    RingElement out;
    out.residues.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
        out.residues[i] = (factors_[i].modulus - a.residues[i]) % factors_[i].modulus;
    return out;
}

bool RingSpec::is_zero(const RingElement& x) const {
    check_element(x);
    return std::all_of(x.residues.begin(), x.residues.end(),
                       [](std::uint32_t r) { return r == 0; });
}

bool RingSpec::is_one(const RingElement& x) const {
    check_element(x);
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (x.residues[i] != 1 % factors_[i].modulus) return false;
    return true;
}

bool RingSpec::is_unit(const RingElement& x) const {
    check_element(x);
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (x.residues[i] % factors_[i].p == 0) return false;
    return true;
}

bool RingSpec::is_zero_divisor(const RingElement& x) const {
    check_element(x);
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (x.residues[i] % factors_[i].p == 0) return true;
    return false;
}

bool RingSpec::is_zero_divisor_definitional(const RingElement& x) const {
    check_element(x);
    for (std::uint64_t i = 1; i < order_; ++i) {
        RingElement y = element_at(i);
        if (is_zero(mul(x, y))) return true;
    }
    return false;
}

bool RingSpec::is_unit_definitional(const RingElement& x) const {
    check_element(x);
    for (std::uint64_t i = 0; i < order_; ++i) {
        if (is_one(mul(x, element_at(i)))) return true;
    }
    return false;
}

std::vector<RingElement> RingSpec::zero_divisor_set() const {
    std::vector<RingElement> out;
    for (std::uint64_t i = 0; i < order_; ++i) {
        RingElement x = element_at(i);
        if (is_zero_divisor(x)) out.push_back(std::move(x));
    }
    return out;
}

std::uint64_t RingSpec::beta() const {
    std::uint64_t units = 1;
    for (const Factor& f : factors_)
        units *= f.modulus - f.modulus / f.p;
    return order_ - units;
}

bool RingSpec::subset_is_ideal(const std::vector<RingElement>& s) const {
    std::vector<char> member(order_, 0);
    for (const RingElement& x : s) member[index_of(x)] = 1;
    if (!member[index_of(zero())]) return false;
    for (const RingElement& a : s) {
        if (!member[index_of(neg(a))]) return false;
        for (const RingElement& b : s)
            if (!member[index_of(add(a, b))]) return false;
    }
    for (const RingElement& a : s) {
        for (std::uint64_t i = 0; i < order_; ++i)
            if (!member[index_of(mul(a, element_at(i)))]) return false;
    }
    return true;
}

std::vector<RingSpec::PrimeIdeal> RingSpec::prime_ideals() const {
    std::vector<PrimeIdeal> out;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        PrimeIdeal ideal;
        ideal.p = factors_[j].p;
        for (std::uint64_t i = 0; i < order_; ++i) {
            RingElement x = element_at(i);
            if (x.residues[j] % factors_[j].p == 0) ideal.elements.push_back(std::move(x));
        }
        ideal.size = ideal.elements.size();
        if (ideal.size != order_ / factors_[j].p)
            throw std::logic_error("prime ideal size disagrees with order/p");
        if (order_ <= 10'000) {
            // definitional check: proper, and ab in P => a in P or b in P
            if (ideal.size >= order_)
                throw std::logic_error("prime ideal is not proper");
            std::vector<char> in_p(order_, 0);
            for (const RingElement& x : ideal.elements) in_p[index_of(x)] = 1;
            std::vector<RingElement> outside;
            for (std::uint64_t i = 0; i < order_; ++i)
                if (!in_p[i]) outside.push_back(element_at(i));
            for (const RingElement& a : outside)
                for (const RingElement& b : outside)
                    if (in_p[index_of(mul(a, b))])
                        throw std::logic_error("prime condition failed for factor ideal");
        }
        out.push_back(std::move(ideal));
    }
    return out;
}

bool RingSpec::zero_divisors_form_ideal() const {
    if (order_ <= 10'000) return subset_is_ideal(zero_divisor_set());
    return local();
}

std::uint64_t RingSpec::alpha() const {
    if (!zero_divisors_form_ideal())
        throw Error(ErrorKind::hypothesis, "Z(R) is not an ideal of " + name_);
    return order_ / beta();
}

} // namespace rzdg
