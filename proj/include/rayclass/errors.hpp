#ifndef RAYCLASS_ERRORS_HPP
#define RAYCLASS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace rayclass {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* abgroup */
struct infinite_group : error { using error::error; };

/* quadfield */
struct invalid_d : error { using error::error; };
struct not_split : error { using error::error; };
struct not_inert : error { using error::error; };
struct ramified_prime : error { using error::error; };
struct zero_element : error { using error::error; };

/* quadray */
struct non_integer_ratio : error { using error::error; };
struct growth_only_case : error { using error::error; };
struct wrong_case : error { using error::error; };

/* cycfield */
struct mismatched_prime : error { using error::error; };
struct not_divisible : error { using error::error; };
struct index_out_of_range : error { using error::error; };
struct not_odd_prime : error { using error::error; };
struct cap_exceeded : error { using error::error; };
struct precision_failure : error { using error::error; };

/* cycray */
struct irregular_prime : error {
    std::vector<unsigned long> indices; /* offending Bernoulli indices, may be empty */
    explicit irregular_prime(const std::string& what,
                             std::vector<unsigned long> idx = {})
        : error(what), indices(std::move(idx)) {}
};
struct class_part_not_coprime : error { using error::error; };

/* oracle */
struct budget_exceeded : error { using error::error; };
struct unsupported_prime : error { using error::error; };
struct not_a_unit : error { using error::error; };

} // namespace rayclass

#endif
