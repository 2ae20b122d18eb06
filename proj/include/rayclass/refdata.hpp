#ifndef RAYCLASS_REFDATA_HPP
#define RAYCLASS_REFDATA_HPP

#include <istream>
#include <vector>

#include "rayclass/abgroup.hpp"
#include "rayclass/integers.hpp"

namespace rayclass {

struct table1_entry {
    Int p;
    ab_group cl;   /* class group */
    ab_group clp;  /* ray class group mod p,   i.e. k = p-1 */
    ab_group clp2; /* ray class group mod p^2, i.e. k = 2(p-1) */
    bool irregular = false;
    std::string source;
};

/* parse the line-oriented reference format (see data/table1_reference.dat) */
std::vector<table1_entry> parse_reference(std::istream& in);

/* the bundled reference rows (verbatim copy of the data file) */
const std::vector<table1_entry>& table1_reference();

} // namespace rayclass

#endif
