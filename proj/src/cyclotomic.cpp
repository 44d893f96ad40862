#include "vvmf/cyclotomic.hpp"

#include "vvmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace vvmf {

using Term = CyclotomicNumber::Term;

// ---------------------------------------------------------------------------
// CyclotomicField

CyclotomicField::CyclotomicField(std::int64_t order) : order_(order) {
    if (order < 1)
        throw ConfigurationError("cyclotomic order must be positive");
    std::int64_t n = order;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        std::int64_t pe = 1;
        while (n % p == 0) {
            n /= p;
            pe *= p;
        }
        primes_.push_back({p, pe, pe / p});
    }
    if (n > 1)
        primes_.push_back({n, n, 1});
}

const CyclotomicField& CyclotomicField::get(std::int64_t order) {
    static std::mutex mutex;
    static std::map<std::int64_t, std::unique_ptr<CyclotomicField>> registry;
    std::lock_guard lock(mutex);
    auto& slot = registry[order];
    if (!slot)
        slot = std::make_unique<CyclotomicField>(order);
    return *slot;
}

namespace {

// Top base-p digit of (k mod p^e) that is excluded from the basis.
std::int64_t forbiddenDigit(const CyclotomicField::PrimePower& pp) {
    return pp.prime == 2 ? 1 : pp.prime - 1;
}

std::int64_t topDigit(std::int64_t k, const CyclotomicField::PrimePower& pp) {
    return (k % pp.power) / pp.topWeight;
}

void sortAndMerge(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational acc = std::move(terms[i].second);
        while (j < terms.size() && terms[j].first == terms[i].first) {
            acc += terms[j].second;
            ++j;
        }
        if (acc != 0) {
            terms[out].first = terms[i].first;
            terms[out].second = std::move(acc);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

} // namespace

bool CyclotomicField::isBasisExponent(std::int64_t k) const {
    k = mod64(k, order_);
    return std::all_of(primes_.begin(), primes_.end(), [&](const PrimePower& pp) {
        return topDigit(k, pp) != forbiddenDigit(pp);
    });
}

std::int64_t CyclotomicField::degree() const {
    std::int64_t phi = order_;
    for (const auto& pp : primes_)
        phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

std::vector<Term> canonicalize(const CyclotomicField& field, std::vector<Term> terms) {
    const auto L = field.order();
    for (auto& t : terms)
        t.first = mod64(t.first, L);
    sortAndMerge(terms);
    for (const auto& pp : field.primePowers()) {
        const auto bad = forbiddenDigit(pp);
        const auto step = L / pp.prime;
        if (std::none_of(terms.begin(), terms.end(),
                         [&](const Term& t) { return topDigit(t.first, pp) == bad; }))
            continue;
        std::vector<Term> next;
        next.reserve(terms.size() * static_cast<std::size_t>(pp.prime));
        for (auto& t : terms) {
            if (topDigit(t.first, pp) != bad) {
                next.push_back(std::move(t));
                continue;
            }
            // sum_{j=0}^{p-1} zeta^{k + jL/p} = 0 (p odd); zeta^{k + L/2} = -zeta^k (p = 2)
            const Rational neg = -t.second;
            for (std::int64_t j = 1; j < pp.prime; ++j)
                next.emplace_back((t.first + j * step) % L, neg);
        }
        sortAndMerge(next);
        terms = std::move(next);
    }
    return terms;
}

CyclotomicNumber CyclotomicField::zero() const { return CyclotomicNumber(*this, {}); }

CyclotomicNumber CyclotomicField::one() const { return fromRational(Rational(1)); }

CyclotomicNumber CyclotomicField::fromRational(const Rational& r) const {
    if (r == 0)
        return zero();
    return CyclotomicNumber(*this, {{0, r}});
}

CyclotomicNumber CyclotomicField::rootOfUnity(std::int64_t numerator,
                                              std::int64_t denominator) const {
    if (denominator < 1)
        throw InputError("root of unity denominator must be positive");
    if (order_ % denominator != 0)
        throw ConfigurationError("root of unity of order " + std::to_string(denominator) +
                                 " is not in Q(zeta_" + std::to_string(order_) +
                                 "); required L = " +
                                 std::to_string(lcm64(order_, denominator)));
    const auto k = mod64(numerator, denominator) * (order_ / denominator);
    return CyclotomicNumber(*this, {{k, Rational(1)}});
}

CyclotomicNumber CyclotomicField::sqrtDiscriminant(std::int64_t d) const {
    if (d < 1)
        throw InputError("sqrtDiscriminant needs a positive integer");
    if (order_ % (4 * d) != 0)
        throw ConfigurationError("sqrt(" + std::to_string(d) + ") needs 4*" + std::to_string(d) +
                                 " | L, but L = " + std::to_string(order_) + "; required L = " +
                                 std::to_string(lcm64(order_, 4 * d)));
    const auto n = 4 * d;
    std::vector<Term> gauss;
    gauss.reserve(static_cast<std::size_t>(n));
    for (std::int64_t x = 0; x < n; ++x)
        gauss.emplace_back((x * x % n) * (order_ / n), Rational(1));
    CyclotomicNumber g(*this, std::move(gauss));
    // sqrt(D) = G (1 - i) / 4
    const auto factor = one() - rootOfUnity(1, 4);
    return g * factor * Rational(1, 4);
}

// ---------------------------------------------------------------------------
// CyclotomicNumber

CyclotomicNumber::CyclotomicNumber(const CyclotomicField& field, std::vector<Term> terms)
    : field_(&field), terms_(canonicalize(field, std::move(terms))) {}

std::int64_t CyclotomicNumber::order() const noexcept { return field_ ? field_->order() : 1; }

void CyclotomicNumber::adoptField(const CyclotomicNumber& other) {
    if (field_ == nullptr) {
        field_ = other.field_;
        return;
    }
    if (other.field_ != nullptr && other.field_ != field_)
        throw ConfigurationError("mixing cyclotomic numbers of orders " +
                                 std::to_string(field_->order()) + " and " +
                                 std::to_string(other.field_->order()));
}

bool CyclotomicNumber::isOne() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

bool CyclotomicNumber::isRational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Rational CyclotomicNumber::toRational() const {
    if (!isRational())
        throw InternalError("cyclotomic number " + toString() + " is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].second;
}

CyclotomicNumber CyclotomicNumber::conj() const {
    if (field_ == nullptr)
        return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_)
        out.emplace_back(-k, c);
    return CyclotomicNumber(*field_, std::move(out));
}

CyclotomicNumber CyclotomicNumber::pow(std::uint64_t n) const {
    if (field_ == nullptr)
        throw ConfigurationError("pow of a detached cyclotomic number");
    CyclotomicNumber result = field_->one();
    CyclotomicNumber base = *this;
    while (n > 0) {
        if (n & 1U)
            result *= base;
        n >>= 1U;
        if (n > 0)
            base *= base;
    }
    return result;
}

std::complex<double> CyclotomicNumber::toComplex() const {
    std::complex<double> z{0.0, 0.0};
    const double L = static_cast<double>(order());
    for (const auto& [k, c] : terms_) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / L;
        z += c.get_d() * std::polar(1.0, angle);
    }
    return z;
}

std::string CyclotomicNumber::toString() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        out << vvmf::toString(c);
        if (k != 0)
            out << "*z" << order() << "^" << k;
    }
    return out.str();
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& rhs) {
    adoptField(rhs);
    if (rhs.terms_.empty())
        return *this;
    // both operands canonical: merging keeps every exponent in the basis
    std::vector<Term> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    merged.insert(merged.end(), terms_.begin(), terms_.end());
    merged.insert(merged.end(), rhs.terms_.begin(), rhs.terms_.end());
    sortAndMerge(merged);
    terms_ = std::move(merged);
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& rhs) {
    return *this += -rhs;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& rhs) {
    *this = *this * rhs;
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& rhs) {
    if (rhs == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.second *= rhs;
    return *this;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    CyclotomicNumber out;
    out.field_ = a.field_;
    out.adoptField(b);
    if (a.terms_.empty() || b.terms_.empty())
        return out;
    if (b.isRational())
        return a * b.terms_[0].second;
    if (a.isRational())
        return b * a.terms_[0].second;
    const auto L = out.field_->order();
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            prod.emplace_back((ka + kb) % L, ca * cb);
    out.terms_ = canonicalize(*out.field_, std::move(prod));
    return out;
}

CyclotomicNumber operator-(CyclotomicNumber a) {
    for (auto& t : a.terms_)
        t.second = -t.second;
    return a;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.terms_.empty() || b.terms_.empty())
        return a.terms_.empty() && b.terms_.empty();
    if (a.field_ != b.field_)
        throw ConfigurationError("comparing cyclotomic numbers of different orders");
    return a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// CycloMatrix

CycloMatrix::CycloMatrix(const CyclotomicField& field, std::size_t n)
    : field_(&field), n_(n), data_(n * n, field.zero()) {}

CycloMatrix CycloMatrix::identity(const CyclotomicField& field, std::size_t n) {
    CycloMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = field.one();
    return m;
}

CycloMatrix CycloMatrix::transpose() const {
    CycloMatrix t(*field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

CycloMatrix CycloMatrix::conjTranspose() const {
    CycloMatrix t(*field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j).conj();
    return t;
}

CyclotomicNumber CycloMatrix::trace() const {
    CyclotomicNumber t = field_->zero();
    for (std::size_t i = 0; i < n_; ++i)
        t += (*this)(i, i);
    return t;
}

bool CycloMatrix::isIdentity() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const auto& x = (*this)(i, j);
            if (i == j ? !x.isOne() : !x.isZero())
                return false;
        }
    return true;
}

bool CycloMatrix::isDiagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).isZero())
                return false;
    return true;
}

CycloMatrix CycloMatrix::pow(std::uint64_t e) const {
    CycloMatrix result = identity(*field_, n_);
    CycloMatrix base = *this;
    while (e > 0) {
        if (e & 1U)
            result = result * base;
        e >>= 1U;
        if (e > 0)
            base = base * base;
    }
    return result;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
    if (a.n_ != b.n_ || a.field_ != b.field_)
        throw ConfigurationError("matrix shape or field mismatch");
    const auto n = a.n_;
    const auto L = a.field_->order();
    CycloMatrix c(*a.field_, n);
    std::vector<Term> acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            acc.clear();
            for (std::size_t k = 0; k < n; ++k) {
                const auto& x = a(i, k);
                const auto& y = b(k, j);
                if (x.isZero() || y.isZero())
                    continue;
                for (const auto& [kx, cx] : x.terms())
                    for (const auto& [ky, cy] : y.terms())
                        acc.emplace_back((kx + ky) % L, cx * cy);
            }
            if (!acc.empty())
                c(i, j) = CyclotomicNumber(*a.field_, acc);
        }
    return c;
}

CycloMatrix operator*(const CyclotomicNumber& s, const CycloMatrix& m) {
    CycloMatrix out = m;
    for (auto& x : out.data_)
        if (!x.isZero())
            x = s * x;
    return out;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
}

} // namespace vvmf
