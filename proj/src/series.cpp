#include "vvmf/series.hpp"

#include "vvmf/errors.hpp"

#include <algorithm>

namespace vvmf {

SparseSeries::SparseSeries(Rational truncation) : truncation_(std::move(truncation)) {}

SparseSeries::SparseSeries(Terms terms, Rational truncation)
    : terms_(std::move(terms)), truncation_(std::move(truncation)) {
    std::erase_if(terms_, [&](const auto& kv) { return kv.second == 0 || kv.first > truncation_; });
    checkCoset();
}

SparseSeries SparseSeries::one(const Rational& truncation) {
    return monomial(Rational(0), Rational(1), truncation);
}

SparseSeries SparseSeries::monomial(const Rational& exponent, const Rational& coefficient,
                                    const Rational& truncation) {
    Terms t;
    t.emplace(exponent, coefficient);
    return SparseSeries(std::move(t), truncation);
}

void SparseSeries::checkCoset() const {
    if (terms_.empty())
        return;
    const auto& first = terms_.begin()->first;
    for (const auto& [n, c] : terms_)
        if (!congruentMod1(n, first))
            throw InternalError("series exponents " + toString(first) + " and " + toString(n) +
                                " lie in different cosets of Z");
}

std::optional<Rational> SparseSeries::lowestExponent() const {
    if (terms_.empty())
        return std::nullopt;
    return terms_.begin()->first;
}

Rational SparseSeries::coefficient(const Rational& n) const {
    if (n > truncation_)
        throw PrecisionError("coefficient of q^" + toString(n) + " requested but series is only known to q^" +
                             toString(truncation_));
    const auto it = terms_.find(n);
    return it == terms_.end() ? Rational(0) : it->second;
}

SparseSeries SparseSeries::truncated(const Rational& truncation) const {
    if (truncation > truncation_)
        throw PrecisionError("cannot raise truncation from " + toString(truncation_) + " to " +
                             toString(truncation));
    Terms t;
    for (const auto& [n, c] : terms_)
        if (n <= truncation)
            t.emplace(n, c);
    return SparseSeries(std::move(t), truncation);
}

SparseSeries& SparseSeries::operator+=(const SparseSeries& rhs) {
    truncation_ = std::min(truncation_, rhs.truncation_);
    std::erase_if(terms_, [&](const auto& kv) { return kv.first > truncation_; });
    for (const auto& [n, c] : rhs.terms_) {
        if (n > truncation_)
            continue;
        auto& slot = terms_[n];
        slot += c;
        if (slot == 0)
            terms_.erase(n);
    }
    checkCoset();
    return *this;
}

SparseSeries& SparseSeries::operator-=(const SparseSeries& rhs) {
    SparseSeries neg = rhs;
    neg *= Rational(-1);
    return *this += neg;
}

SparseSeries& SparseSeries::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_)
        kv.second *= s;
    return *this;
}

SparseSeries seriesMultiply(const SparseSeries& a, const SparseSeries& b) {
    const auto va = a.lowestExponent();
    const auto vb = b.lowestExponent();
    if (!va || !vb) {
        // zero factor: the product is zero wherever the other factor is known
        Rational t = !va && !vb ? std::min(a.truncation(), b.truncation())
                     : !va      ? a.truncation() + *vb
                                : b.truncation() + *va;
        return SparseSeries(t);
    }
    const Rational trunc = std::min(*va + b.truncation(), *vb + a.truncation());
    SparseSeries::Terms out;
    for (const auto& [na, ca] : a.terms()) {
        if (na + *vb > trunc)
            break;
        for (const auto& [nb, cb] : b.terms()) {
            const Rational n = na + nb;
            if (n > trunc)
                break;
            out[n] += ca * cb;
        }
    }
    return SparseSeries(std::move(out), trunc);
}

SparseSeries seriesPow(const SparseSeries& a, unsigned n) {
    SparseSeries result = SparseSeries::one(a.truncation());
    for (unsigned i = 0; i < n; ++i)
        result = seriesMultiply(result, a);
    return result;
}

} // namespace vvmf
