#include "rayclass/refdata.hpp"

#include <sstream>
#include <stdexcept>

namespace rayclass {

namespace detail {
extern const char* table1_blob; /* generated from data/table1_reference.dat */
}

namespace {

std::vector<Int> parse_list(const std::string& s)
{
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("reference data: malformed list " + s);
    std::vector<Int> out;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty())
        return out;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ','))
        out.emplace_back(tok);
    return out;
}

} // namespace

std::vector<table1_entry> parse_reference(std::istream& in)
{
    std::vector<table1_entry> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        table1_entry e;
        std::istringstream is(line);
        std::string field;
        while (is >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("reference data: malformed field " + field);
            std::string key = field.substr(0, eq);
            std::string val = field.substr(eq + 1);
            if (key == "p")
                e.p = Int(val);
            else if (key == "cl")
                e.cl = ab_group(parse_list(val));
            else if (key == "clp")
                e.clp = ab_group(parse_list(val));
            else if (key == "clp2")
                e.clp2 = ab_group(parse_list(val));
            else if (key == "flags")
                e.irregular = (val == "irregular");
            else if (key == "source")
                e.source = val;
            else
                throw std::invalid_argument("reference data: unknown key " + key);
        }
        if (e.p == 0)
            throw std::invalid_argument("reference data: record without p");
        out.push_back(std::move(e));
    }
    return out;
}

const std::vector<table1_entry>& table1_reference()
{
    static const std::vector<table1_entry> rows = [] {
        std::istringstream is(detail::table1_blob);
        return parse_reference(is);
    }();
    return rows;
}

} // namespace rayclass
