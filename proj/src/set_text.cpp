#include "setbm/set_text.hpp"

#include <charconv>
#include <cctype>
#include <vector>

#include "setbm/errors.hpp"

namespace setbm {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(strip(s.substr(start)));
            return out;
        }
        out.push_back(strip(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

double parse_number(const std::string& s) {
    std::string t = strip(s);
    if (t.empty()) throw InvalidRange("parse_set: empty number");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw InvalidRange("parse_set: bad number '" + t + "'");
    return v;
}

Vec parse_vec(const std::string& s) {
    std::vector<std::string> parts = split(s, ',');
    if (parts.empty() || parts.size() > 3)
        throw InvalidRange("parse_set: vector needs 1..3 components");
    Vec v = Vec::zero(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<int>(i)] = parse_number(parts[i]);
    return v;
}

}  // namespace

ConvexSet parse_set(const std::string& text) {
    std::string t = strip(text);
    if (t.empty()) throw InvalidRange("parse_set: empty spec");
    if (t.front() == '[') {
        if (t.back() != ']') throw InvalidRange("parse_set: unterminated interval");
        std::vector<std::string> parts = split(t.substr(1, t.size() - 2), ',');
        if (parts.size() != 2) throw InvalidRange("parse_set: interval needs two endpoints");
        return ConvexSet::interval(parse_number(parts[0]), parse_number(parts[1]));
    }
    if (t.rfind("ball:", 0) == 0) {
        std::vector<std::string> parts = split(t.substr(5), ';');
        if (parts.size() != 2) throw InvalidRange("parse_set: ball needs 'center;radius'");
        return ConvexSet::ball(parse_vec(parts[0]), parse_number(parts[1]));
    }
    if (t.rfind("poly:", 0) == 0) {
        std::vector<std::string> parts = split(t.substr(5), ';');
        std::vector<Vec> verts;
        verts.reserve(parts.size());
        for (const std::string& p : parts) verts.push_back(parse_vec(p));
        return ConvexSet::polytope(std::move(verts));
    }
    throw InvalidRange("parse_set: unrecognized set spec '" + t + "'");
}

}  // namespace setbm
