#include "rayclass/abgroup.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "rayclass/errors.hpp"

namespace rayclass {

int_mat::int_mat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries))
{
    if (e_.size() != rows_ * cols_)
        throw std::invalid_argument("int_mat: entry count does not match dimensions");
}

void int_mat::append_row(const std::vector<Int>& row)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw std::invalid_argument("int_mat: row length does not match column count");
    e_.insert(e_.end(), row.begin(), row.end());
    ++rows_;
}

void int_mat::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap(at(i, c), at(j, c));
}

void int_mat::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap(at(r, i), at(r, j));
}

namespace {

/* nearest quotient for b > 0: a - q*b lies in (-b/2, b/2] */
Int nearest_q(const Int& a, const Int& b)
{
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * rem > b)
        ++q;
    return q;
}

/* balanced residue in (-M/2, M/2] */
void balance(Int& x, const Int& M)
{
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    if (2 * x > M)
        x -= M;
}

/* Elimination to Smith form. With a modulus, every entry is balanced mod M
 * after each operation: adding multiples of M*e_j to a row keeps the lattice
 * L + M*Z^n unchanged (M*Z^n is column-basis invariant), so this is sound
 * when M annihilates the presented quotient. */
std::vector<Int> snf_core(int_mat m, const Int* mod)
{
    const std::size_t t = std::min(m.rows(), m.cols());

    auto row_axpy = [&](std::size_t i, std::size_t r, const Int& q, std::size_t c0) {
        if (q == 0)
            return;
        for (std::size_t c = c0; c < m.cols(); ++c) {
            m.at(i, c) -= q * m.at(r, c);
            if (mod)
                balance(m.at(i, c), *mod);
        }
    };
    auto col_axpy = [&](std::size_t j, std::size_t cc, const Int& q, std::size_t r0) {
        if (q == 0)
            return;
        for (std::size_t r = r0; r < m.rows(); ++r) {
            m.at(r, j) -= q * m.at(r, cc);
            if (mod)
                balance(m.at(r, j), *mod);
        }
    };
    auto make_pivot_positive = [&](std::size_t r) {
        if (m.at(r, r) < 0)
            for (std::size_t c = r; c < m.cols(); ++c)
                m.at(r, c) = -m.at(r, c);
    };

    std::size_t r = 0;
    while (r < t) {
        /* pivot: entry of smallest absolute value in the trailing block */
        std::size_t pi = r, pj = r;
        Int best = 0;
        for (std::size_t i = r; i < m.rows(); ++i)
            for (std::size_t j = r; j < m.cols(); ++j) {
                const Int& v = m.at(i, j);
                if (v != 0 && (best == 0 || cmp(abs(v), best) < 0)) {
                    best = abs(v);
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0)
            break; /* trailing block zero */
        m.swap_rows(r, pi);
        m.swap_cols(r, pj);
        make_pivot_positive(r);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (m.at(i, r) == 0)
                    continue;
                row_axpy(i, r, nearest_q(m.at(i, r), m.at(r, r)), r);
                if (m.at(i, r) != 0) { /* smaller remainder becomes the pivot */
                    m.swap_rows(r, i);
                    make_pivot_positive(r);
                    dirty = true;
                }
            }
            if (dirty)
                continue;
            for (std::size_t j = r + 1; j < m.cols(); ++j) {
                if (m.at(r, j) == 0)
                    continue;
                col_axpy(j, r, nearest_q(m.at(r, j), m.at(r, r)), r);
                if (m.at(r, j) != 0) {
                    m.swap_cols(r, j);
                    make_pivot_positive(r);
                    dirty = true;
                }
            }
        }

        /* pivot must divide the rest of the block */
        bool redo = false;
        for (std::size_t i = r + 1; i < m.rows() && !redo; ++i)
            for (std::size_t j = r + 1; j < m.cols() && !redo; ++j)
                if (m.at(i, j) % m.at(r, r) != 0) {
                    for (std::size_t c = r; c < m.cols(); ++c)
                        m.at(r, c) += m.at(i, c);
                    redo = true;
                }
        if (!redo)
            ++r;
    }

    std::vector<Int> diag(t);
    for (std::size_t i = 0; i < t; ++i) {
        diag[i] = abs(m.at(i, i));
        if (mod)
            diag[i] = gcd(diag[i], *mod); /* the lattice carried along is span + M Z^n */
    }
    return diag;
}

} // namespace

std::vector<Int> smith_normal_form(int_mat m)
{
    return snf_core(std::move(m), nullptr);
}

std::vector<Int> smith_normal_form_mod(int_mat m, const Int& annihilator)
{
    assert(annihilator > 0);
    /* the M*e_j rows are implied; append them so rank is full even when the
     * input has few rows */
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<Int> row(m.cols(), Int(0));
        row[j] = annihilator;
        m.append_row(row);
    }
    return snf_core(std::move(m), &annihilator);
}

ab_group::ab_group(std::vector<Int> invariant_factors) : inv_(std::move(invariant_factors))
{
    for (std::size_t i = 0; i < inv_.size(); ++i) {
        if (inv_[i] < 2)
            throw std::invalid_argument("ab_group: invariant factor < 2");
        if (i + 1 < inv_.size() && inv_[i + 1] % inv_[i] != 0)
            throw std::invalid_argument("ab_group: divisibility chain violated");
    }
}

Int ab_group::order() const
{
    Int n = 1;
    for (const Int& d : inv_)
        n *= d;
    return n;
}

ab_group group_from_relations(std::size_t num_generators, const int_mat& relations)
{
    if (relations.rows() > 0 && relations.cols() != num_generators)
        throw std::invalid_argument("group_from_relations: relation width mismatch");
    std::vector<Int> diag = smith_normal_form(relations);
    if (diag.size() < num_generators)
        throw infinite_group("group_from_relations: fewer relations than generators");
    std::vector<Int> inv;
    for (const Int& d : diag) {
        if (d == 0)
            throw infinite_group("group_from_relations: zero Smith entry, infinite quotient");
        if (d > 1)
            inv.push_back(d);
    }
    return ab_group(std::move(inv));
}

ab_group quotient_by_subgroup(std::size_t num_generators, const int_mat& relations,
                              const std::vector<std::vector<Int>>& subgroup_gens)
{
    int_mat stacked = relations;
    if (stacked.rows() == 0 && stacked.cols() == 0)
        stacked = int_mat(0, num_generators);
    for (const auto& g : subgroup_gens) {
        if (g.size() != num_generators)
            throw std::invalid_argument("quotient_by_subgroup: generator length mismatch");
        stacked.append_row(g);
    }
    return group_from_relations(num_generators, stacked);
}

ab_group group_from_relations_mod(std::size_t num_generators, const int_mat& relations,
                                  const Int& annihilator)
{
    if (relations.rows() > 0 && relations.cols() != num_generators)
        throw std::invalid_argument("group_from_relations_mod: relation width mismatch");
    int_mat m = relations;
    if (m.rows() == 0 && m.cols() == 0)
        m = int_mat(0, num_generators);
    std::vector<Int> diag = smith_normal_form_mod(std::move(m), annihilator);
    std::vector<Int> inv;
    for (const Int& d : diag)
        if (d > 1)
            inv.push_back(d);
    return ab_group(std::move(inv));
}

ab_group quotient_by_subgroup_mod(std::size_t num_generators, const int_mat& relations,
                                  const std::vector<std::vector<Int>>& subgroup_gens,
                                  const Int& annihilator)
{
    int_mat stacked = relations;
    if (stacked.rows() == 0 && stacked.cols() == 0)
        stacked = int_mat(0, num_generators);
    for (const auto& g : subgroup_gens) {
        if (g.size() != num_generators)
            throw std::invalid_argument("quotient_by_subgroup_mod: generator length mismatch");
        stacked.append_row(g);
    }
    return group_from_relations_mod(num_generators, stacked, annihilator);
}

ab_group p_part(const ab_group& g, const Int& p)
{
    assert(is_prime(p));
    std::vector<Int> inv;
    for (const Int& d : g.invariant_factors()) {
        long v = int_valuation(d, p);
        if (v > 0)
            inv.push_back(pow_int(p, static_cast<unsigned long>(v)));
    }
    return ab_group(std::move(inv));
}

std::string to_string(const ab_group& g)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < g.invariant_factors().size(); ++i) {
        if (i)
            os << ',';
        os << g.invariant_factors()[i];
    }
    os << ']';
    return os.str();
}

} // namespace rayclass
