#include "vvmf/linalg.hpp"

#include "vvmf/errors.hpp"

#include <algorithm>
#include <utility>

namespace vvmf {

RationalMatrix::RationalMatrix(const std::vector<RationalVector>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InternalError("ragged matrix rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalVector RationalMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

Echelon rowReduce(RationalMatrix m) {
    const auto rows = m.rows();
    const auto cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (m(r, j) != 0)
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    RationalMatrix reduced(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            reduced(i, j) = m(i, j);
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return rowReduce(m).pivots.size(); }

std::vector<RationalVector> kernelBasis(const RationalMatrix& m) {
    const auto ech = rowReduce(m);
    const auto cols = m.cols();
    std::vector<bool> isPivot(cols, false);
    for (auto p : ech.pivots)
        isPivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (isPivot[f])
            continue;
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            v[ech.pivots[i]] = -ech.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

AffineSolution solveAffine(const RationalMatrix& a, const RationalVector& b) {
    if (b.size() != a.rows())
        throw InternalError("solveAffine: dimension mismatch");
    // reduce [a | b | I] so the identity block records the row operations
    const auto rows = a.rows();
    const auto cols = a.cols();
    RationalMatrix aug(rows, cols + 1 + rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            aug(i, j) = a(i, j);
        aug(i, cols) = b[i];
        aug(i, cols + 1 + i) = 1;
    }
    // eliminate only on the coefficient columns
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && aug(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < aug.cols(); ++j)
                std::swap(aug(p, j), aug(r, j));
        const Rational inv = 1 / aug(r, c);
        for (std::size_t j = 0; j < aug.cols(); ++j)
            aug(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || aug(i, c) == 0)
                continue;
            const Rational f = aug(i, c);
            for (std::size_t j = 0; j < aug.cols(); ++j)
                aug(i, j) -= f * aug(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    AffineSolution out;
    for (std::size_t i = r; i < rows; ++i) {
        if (aug(i, cols) != 0) {
            const Rational scale = 1 / aug(i, cols);
            out.witness.resize(rows);
            for (std::size_t k = 0; k < rows; ++k)
                out.witness[k] = aug(i, cols + 1 + k) * scale;
            return out;
        }
    }
    RationalVector x(cols);
    for (std::size_t i = 0; i < r; ++i)
        x[pivots[i]] = aug(i, cols);
    out.solution = std::move(x);
    return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
    const auto n = m.rows();
    if (m.cols() != n)
        throw InternalError("inverse of a non-square matrix");
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto ech = rowReduce(aug);
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
        throw InputError("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = ech.reduced(i, n + j);
    return inv;
}

IntegerVector primitive(IntegerVector v) {
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    if (g == 0)
        return v;
    const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0)
        g = -g;
    for (auto& x : v)
        x /= g;
    return v;
}

IntegerVector clearDenominators(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v)
        l = lcm(l, x.get_den());
    IntegerVector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(Rational(x * l).get_num());
    return primitive(std::move(out));
}

namespace {


Integer floorMod(const Integer& x, const Integer& d) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return r;
}

// Hermite form of the full-rank lattice spanned by `gens` and d * Z^k, with
// all intermediate entries kept reduced mod d.
std::vector<IntegerVector> hermiteModular(std::vector<IntegerVector> gens, const Integer& d, std::size_t k) {
    for (auto& g : gens)
        for (auto& x : g)
            x = floorMod(x, d);
    std::vector<IntegerVector> out;
    for (std::size_t c = 0; c < k; ++c) {
        // fold column c of all remaining generators into one pivot row, using d * e_c too
        IntegerVector pivot(k);
        pivot[c] = d;
        std::vector<IntegerVector> rest;
        for (auto& g : gens) {
            if (g[c] == 0) {
                rest.push_back(std::move(g));
                continue;
            }
            Integer gg, s, t;
            mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot[c].get_mpz_t(), g[c].get_mpz_t());
            const Integer a = pivot[c] / gg, b = g[c] / gg;
            IntegerVector next(k), zero(k);
            for (std::size_t j = 0; j < k; ++j) {
                next[j] = floorMod(s * pivot[j] + t * g[j], d);
                zero[j] = floorMod(a * g[j] - b * pivot[j], d);
            }
            next[c] = gg; // gg divides d, so keep it unreduced
            zero[c] = 0;
            pivot = std::move(next);
            rest.push_back(std::move(zero));
        }
        out.push_back(std::move(pivot));
        gens = std::move(rest);
    }
    // reduce above the pivots
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < c; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), out[i][c].get_mpz_t(), out[c][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < k; ++j)
                    out[i][j] -= q * out[c][j];
        }
    return out;
}

// Plain gcd elimination; fine for few rows, may blow up on many.
std::vector<IntegerVector> hermiteNaive(std::vector<IntegerVector> rows) {
    if (rows.empty())
        return rows;
    const auto cols = rows[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // gcd-combine column c of rows r.. into row r
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0)
                continue;
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[i]);
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][c].get_mpz_t(),
                       rows[i][c].get_mpz_t());
            const Integer a = rows[r][c] / g;
            const Integer b = rows[i][c] / g;
            for (std::size_t j = 0; j < cols; ++j) {
                const Integer x = rows[r][j];
                const Integer y = rows[i][j];
                rows[r][j] = s * x + t * y;
                rows[i][j] = a * y - b * x;
            }
        }
        if (rows[r][c] == 0)
            continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] -= q * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return rows;
}

} // namespace

std::vector<IntegerVector> hermiteForm(std::vector<IntegerVector> rows) {
    std::erase_if(rows, [](const IntegerVector& v) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    });
    if (rows.size() <= 1)
        return hermiteNaive(std::move(rows));
    const auto cols = rows[0].size();
    RationalMatrix b(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            b(i, j) = rows[i][j];
    const auto ech = rowReduce(b);
    const auto k = ech.pivots.size();
    if (k < rows.size())
        return hermiteNaive(std::move(rows));

    // Independent rows: the pivot columns P of the lattice are the leftmost
    // independent ones, the projection to P is injective and contains D * Z^k
    // for D the exponent of Z^k / pi_P(L). Reduce there mod D, then lift.
    RationalMatrix square(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            square(i, j) = b(i, ech.pivots[j]);
    const auto inv = inverse(square);
    Integer exponent = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            exponent = lcm(exponent, inv(i, j).get_den());
    std::vector<IntegerVector> projected;
    for (const auto& r : rows) {
        IntegerVector v(k);
        for (std::size_t j = 0; j < k; ++j)
            v[j] = r[ech.pivots[j]];
        projected.push_back(std::move(v));
    }
    std::vector<IntegerVector> out;
    for (const auto& h : hermiteModular(std::move(projected), exponent, k)) {
        IntegerVector x(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            Rational v = 0;
            for (std::size_t p = 0; p < k; ++p)
                if (h[p] != 0)
                    v += ech.reduced(p, j) * Rational(h[p]);
            if (!isInteger(v))
                throw InternalError("Hermite lift is not integral");
            x[j] = v.get_num();
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<IntegerVector> integerKernel(const RationalMatrix& m) {
    const auto n = m.cols();
    const auto ech = rowReduce(m);
    std::vector<bool> isPivot(n, false);
    for (auto p : ech.pivots)
        isPivot[p] = true;
    std::vector<std::size_t> freeCols;
    for (std::size_t j = 0; j < n; ++j)
        if (!isPivot[j])
            freeCols.push_back(j);
    const auto k = freeCols.size();
    if (k == 0)
        return {};

    // x is determined by its free part y via x_pivot(i) = -sum_f R(i, f) y_f, so
    // the integer kernel is {y in Z^k : R_F y integral}. Impose one row at a time.
    std::vector<IntegerVector> basis(k, IntegerVector(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        basis[i][i] = 1;
    Integer modulus = 1; // the current lattice contains modulus * Z^k
    for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
        Integer d = 1;
        for (auto f : freeCols)
            d = lcm(d, ech.reduced(i, f).get_den());
        if (d == 1)
            continue;
        IntegerVector w(k);
        for (std::size_t j = 0; j < k; ++j)
            w[j] = Rational(ech.reduced(i, freeCols[j]) * d).get_num();
        const auto value = [&](const IntegerVector& b) {
            Integer v = 0;
            for (std::size_t j = 0; j < k; ++j)
                v += w[j] * b[j];
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
            return r;
        };
        // generators of {sum c_b b : sum c_b value(b) = 0 mod d}
        std::vector<IntegerVector> gens;
        IntegerVector acc;
        Integer accValue = 0;
        for (const auto& b : basis) {
            const auto t = value(b);
            if (t == 0) {
                gens.push_back(b);
                continue;
            }
            if (accValue == 0) {
                acc = b;
                accValue = t;
                continue;
            }
            Integer g, s, u;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), accValue.get_mpz_t(), t.get_mpz_t());
            const Integer ta = accValue / g, tb = t / g;
            IntegerVector zero(k), next(k);
            for (std::size_t j = 0; j < k; ++j) {
                zero[j] = tb * acc[j] - ta * b[j];
                next[j] = s * acc[j] + u * b[j];
            }
            gens.push_back(std::move(zero));
            acc = std::move(next);
            accValue = g;
        }
        if (accValue != 0) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), accValue.get_mpz_t(), d.get_mpz_t());
            const Integer mult = d / g;
            for (auto& x : acc)
                x *= mult;
            gens.push_back(std::move(acc));
        }
        modulus *= d;
        basis = hermiteModular(std::move(gens), modulus, k);
    }

    std::vector<IntegerVector> kernel;
    for (const auto& y : basis) {
        IntegerVector x(n);
        for (std::size_t j = 0; j < k; ++j)
            x[freeCols[j]] = y[j];
        for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
            Rational v = 0;
            for (std::size_t j = 0; j < k; ++j)
                v -= ech.reduced(i, freeCols[j]) * Rational(y[j]);
            if (!isInteger(v))
                throw InternalError("integer kernel vector is not integral");
            x[ech.pivots[i]] = v.get_num();
        }
        kernel.push_back(std::move(x));
    }
    return hermiteForm(std::move(kernel));
}

} // namespace vvmf
