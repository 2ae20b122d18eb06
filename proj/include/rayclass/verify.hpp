#ifndef RAYCLASS_VERIFY_HPP
#define RAYCLASS_VERIFY_HPP

#include <string>
#include <vector>

#include "rayclass/integers.hpp"

namespace rayclass {

enum class check_status { pass, fail, skip };

struct verify_line {
    std::string key;
    check_status status;
    std::string detail;
};

struct verify_report {
    std::vector<verify_line> lines;

    std::size_t count(check_status s) const;
    bool ok() const { return count(check_status::fail) == 0; }
    void add(const std::string& key, bool pass, const std::string& detail = "");
    void skip(const std::string& key, const std::string& why);
    void merge(const verify_report& o);
};

/* formula-vs-oracle sweeps mirroring the acceptance criteria; keys are
 * stable strings like "cyc p=5 k=6" */
verify_report verify_cyc(unsigned long budget_limit = 10'000'000UL,
                         unsigned long seed = 12345);
verify_report verify_quad_split(unsigned long budget_limit = 10'000'000UL);
verify_report verify_quad_inert(unsigned long budget_limit = 10'000'000UL);
verify_report verify_filtration(unsigned long budget_limit = 10'000'000UL);
verify_report verify_lemmas();

} // namespace rayclass

#endif
