#ifndef RAYCLASS_ABGROUP_HPP
#define RAYCLASS_ABGROUP_HPP

#include <cstddef>
#include <vector>

#include "rayclass/integers.hpp"

namespace rayclass {

/* Dense integer matrix with exact entries. Row-major. */
class int_mat {
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> e_;

public:
    int_mat() = default;
    int_mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    int_mat(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    void append_row(const std::vector<Int>& row);
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

    bool operator==(const int_mat&) const = default;
};

/* Diagonal of the Smith normal form: d_1,...,d_r >= 0 with d_i | d_{i+1},
 * r = min(rows, cols). Trailing zeros signal rank deficiency. */
std::vector<Int> smith_normal_form(int_mat m);

/* Smith diagonal of (row span + annihilator*Z^cols). Entries are reduced
 * modulo the annihilator throughout, which keeps them small; sound whenever
 * the annihilator kills the quotient being presented. */
std::vector<Int> smith_normal_form_mod(int_mat m, const Int& annihilator);

/* Finite abelian group as invariant factors d_1 | d_2 | ... , every d_i >= 2.
 * Empty list is the trivial group. */
class ab_group {
    std::vector<Int> inv_;

public:
    ab_group() = default;
    explicit ab_group(std::vector<Int> invariant_factors);

    const std::vector<Int>& invariant_factors() const { return inv_; }
    Int order() const;
    bool trivial() const { return inv_.empty(); }
    std::size_t rank() const { return inv_.size(); }

    bool operator==(const ab_group&) const = default;
};

/* Z^num_generators modulo the row span of `relations`.
 * Throws infinite_group if the quotient is not finite. */
ab_group group_from_relations(std::size_t num_generators, const int_mat& relations);

/* Quotient of the group presented by (num_generators, relations) by the
 * subgroup generated by the given coordinate vectors. */
ab_group quotient_by_subgroup(std::size_t num_generators, const int_mat& relations,
                              const std::vector<std::vector<Int>>& subgroup_gens);

/* Same computations with a known annihilator of the quotient (typically the
 * presented group's order); immune to coefficient blowup. */
ab_group group_from_relations_mod(std::size_t num_generators, const int_mat& relations,
                                  const Int& annihilator);
ab_group quotient_by_subgroup_mod(std::size_t num_generators, const int_mat& relations,
                                  const std::vector<std::vector<Int>>& subgroup_gens,
                                  const Int& annihilator);

/* Sylow p-subgroup, as invariant factors. */
ab_group p_part(const ab_group& g, const Int& p);

std::string to_string(const ab_group& g);

} // namespace rayclass

#endif
