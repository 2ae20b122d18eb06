#include "rayclass/render.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rayclass {

std::vector<Int> crt_merge(const ab_group& class_part, const ab_group& p_part)
{
    const auto& a = class_part.invariant_factors();
    const auto& b = p_part.invariant_factors();
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<Int> out(n, Int(1));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[n - a.size() + i] *= a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[n - b.size() + i] *= b[i];
    return out;
}

namespace {

std::string factor_text(const Int& f, const Int& p)
{
    long v = int_valuation(f, p);
    Int cof = f / pow_int(p, static_cast<unsigned long>(v));
    std::string s;
    if (cof > 1)
        s = cof.get_str();
    if (v >= 1) {
        if (!s.empty())
            s += "·"; /* middle dot */
        s += p.get_str();
        if (v > 1)
            s += "^" + std::to_string(v);
    }
    if (s.empty())
        s = "1";
    return s;
}

} // namespace

std::string display_merged(const ab_group& class_part, const ab_group& p_part, const Int& p)
{
    std::vector<Int> merged = crt_merge(class_part, p_part);
    if (merged.empty())
        return "1";
    std::reverse(merged.begin(), merged.end()); /* table style: largest first */
    std::string out;
    std::size_t i = 0;
    while (i < merged.size()) {
        std::size_t j = i;
        while (j < merged.size() && merged[j] == merged[i])
            ++j;
        std::size_t mult = j - i;
        std::string fs = factor_text(merged[i], p);
        bool compound = fs.find("·") != std::string::npos;
        if (!out.empty())
            out += " × "; /* times sign */
        if (mult == 1)
            out += compound ? "Z/(" + fs + ")" : "Z/" + fs;
        else
            out += "(Z/" + fs + ")^" + std::to_string(mult);
        i = j;
    }
    return out;
}

namespace {

/* evaluate "3·23^2" style factor text */
Int eval_factor_text(const std::string& s)
{
    Int prod = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j == i)
            throw std::invalid_argument("parse_merged: expected digit in " + s);
        Int base(s.substr(i, j - i));
        unsigned long e = 1;
        i = j;
        if (i < s.size() && s[i] == '^') {
            ++i;
            j = i;
            while (j < s.size() && isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            e = std::stoul(s.substr(i, j - i));
            i = j;
        }
        prod *= pow_int(base, e);
        /* skip a middle dot (UTF-8 c2 b7) or '*' */
        if (i < s.size()) {
            if (s.compare(i, 2, "·") == 0)
                i += 2;
            else if (s[i] == '*')
                ++i;
            else
                throw std::invalid_argument("parse_merged: junk in factor " + s);
        }
    }
    return prod;
}

} // namespace

std::pair<ab_group, ab_group> parse_merged(const std::string& text, const Int& p)
{
    std::vector<Int> merged;
    if (text != "1") {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find("×", pos);
            std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
            /* trim */
            while (!piece.empty() && piece.back() == ' ')
                piece.pop_back();
            while (!piece.empty() && piece.front() == ' ')
                piece.erase(piece.begin());
            if (piece.empty())
                throw std::invalid_argument("parse_merged: empty piece");
            unsigned long mult = 1;
            std::string body;
            if (piece[0] == '(') {
                std::size_t close = piece.rfind(')');
                if (close == std::string::npos)
                    throw std::invalid_argument("parse_merged: unbalanced parens");
                body = piece.substr(1, close - 1);
                if (close + 1 < piece.size()) {
                    if (piece[close + 1] != '^')
                        throw std::invalid_argument("parse_merged: expected ^ after )");
                    mult = std::stoul(piece.substr(close + 2));
                }
            } else {
                body = piece;
            }
            if (body.compare(0, 2, "Z/") != 0)
                throw std::invalid_argument("parse_merged: expected Z/ in " + piece);
            body = body.substr(2);
            if (!body.empty() && body.front() == '(' && body.back() == ')')
                body = body.substr(1, body.size() - 2);
            Int f = eval_factor_text(body);
            for (unsigned long c = 0; c < mult; ++c)
                merged.push_back(f);
            if (next == std::string::npos)
                break;
            pos = next + 2; /* skip utf-8 times */
        }
    }
    std::vector<Int> cls, pp;
    for (const Int& f : merged) {
        long v = int_valuation(f, p);
        Int cof = f / pow_int(p, static_cast<unsigned long>(v));
        if (cof > 1)
            cls.push_back(cof);
        if (v >= 1)
            pp.push_back(pow_int(p, static_cast<unsigned long>(v)));
    }
    std::sort(cls.begin(), cls.end());
    std::sort(pp.begin(), pp.end());
    return { ab_group(cls), ab_group(pp) };
}

/* ---------------- records ---------------- */

namespace {

nlohmann::json factors_to_json(const std::vector<Int>& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const Int& x : v)
        a.push_back(x.get_str());
    return a;
}

std::vector<Int> factors_from_json(const nlohmann::json& a)
{
    std::vector<Int> out;
    for (const auto& x : a)
        out.emplace_back(x.get<std::string>());
    return out;
}

} // namespace

nlohmann::json record_to_json(const result_record& r)
{
    nlohmann::json q;
    q["kind"] = r.kind;
    q["d"] = r.d ? nlohmann::json(r.d->get_str()) : nlohmann::json(nullptr);
    q["p"] = r.p.get_str();
    q["k"] = r.k;
    q["case"] = r.case_;
    nlohmann::json res;
    res["ratio"] = r.ratio ? nlohmann::json(r.ratio->get_str()) : nlohmann::json(nullptr);
    res["bound"] = r.bound;
    res["exponent"] = r.exponent ? nlohmann::json(*r.exponent) : nlohmann::json(nullptr);
    res["class_part"] = factors_to_json(r.class_part);
    res["p_part"] = factors_to_json(r.p_part);
    nlohmann::json j;
    j["query"] = q;
    j["result"] = res;
    j["provenance"] = r.provenance;
    j["agreement"] = r.agreement ? nlohmann::json(*r.agreement) : nlohmann::json(nullptr);
    return j;
}

result_record record_from_json(const nlohmann::json& j)
{
    result_record r;
    const auto& q = j.at("query");
    r.kind = q.at("kind").get<std::string>();
    if (!q.at("d").is_null())
        r.d = Int(q.at("d").get<std::string>());
    r.p = Int(q.at("p").get<std::string>());
    r.k = q.at("k").get<long>();
    r.case_ = q.at("case").get<std::string>();
    const auto& res = j.at("result");
    if (!res.at("ratio").is_null())
        r.ratio = Int(res.at("ratio").get<std::string>());
    r.bound = res.at("bound").get<bool>();
    if (!res.at("exponent").is_null())
        r.exponent = res.at("exponent").get<long>();
    r.class_part = factors_from_json(res.at("class_part"));
    r.p_part = factors_from_json(res.at("p_part"));
    r.provenance = j.at("provenance").get<std::string>();
    if (!j.at("agreement").is_null())
        r.agreement = j.at("agreement").get<bool>();
    return r;
}

namespace {

std::string joined(const std::vector<Int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ';';
        s += v[i].get_str();
    }
    return s;
}

} // namespace

std::string csv_header()
{
    return "kind,d,p,k,case,ratio,bound,exponent,class_part,p_part,provenance,agreement";
}

std::string record_to_csv(const result_record& r)
{
    std::ostringstream os;
    os << r.kind << ',' << (r.d ? r.d->get_str() : "") << ',' << r.p.get_str() << ',' << r.k
       << ',' << r.case_ << ',' << (r.ratio ? r.ratio->get_str() : "") << ','
       << (r.bound ? "1" : "0") << ',' << (r.exponent ? std::to_string(*r.exponent) : "") << ','
       << joined(r.class_part) << ',' << joined(r.p_part) << ',' << r.provenance << ','
       << (r.agreement ? (*r.agreement ? "1" : "0") : "");
    return os.str();
}

} // namespace rayclass
