#ifndef RAYCLASS_RENDER_HPP
#define RAYCLASS_RENDER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rayclass/abgroup.hpp"
#include "rayclass/integers.hpp"

#include "json.hpp"

namespace rayclass {

/* invariant factors of class_part x p_part (coprime orders, chains merged
 * right-aligned) */
std::vector<Int> crt_merge(const ab_group& class_part, const ab_group& p_part);

/* Table-style rendering, e.g. "Z/(3·23) × (Z/23)^9". Trivial group: "1". */
std::string display_merged(const ab_group& class_part, const ab_group& p_part, const Int& p);

/* inverse of display_merged for the given p (bijective on canonical input) */
std::pair<ab_group, ab_group> parse_merged(const std::string& text, const Int& p);

/* one computation result, as emitted by the CLI */
struct result_record {
    std::string kind;  /* "quad" | "cyc" */
    std::optional<Int> d;
    Int p;
    long k = 0;
    std::string case_; /* "split" | "inert" | "" */
    std::optional<Int> ratio;
    bool bound = false; /* ratio is only an upper bound */
    std::optional<long> exponent;
    std::vector<Int> class_part;
    std::vector<Int> p_part;
    std::string provenance; /* "formula" | "oracle" | "both" */
    std::optional<bool> agreement;

    bool operator==(const result_record&) const = default;
};

nlohmann::json record_to_json(const result_record& r);
result_record record_from_json(const nlohmann::json& j);

std::string csv_header();
std::string record_to_csv(const result_record& r);

} // namespace rayclass

#endif
