#include "setbm/json_out.hpp"

#include <charconv>

namespace setbm {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

ordered_json set_to_json(const ConvexSet& a) {
    ordered_json j;
    j["dimension"] = a.dim();
    switch (a.kind()) {
        case SetKind::Interval:
            j["kind"] = "interval";
            j["lo"] = a.lo();
            j["hi"] = a.hi();
            break;
        case SetKind::Ball: {
            j["kind"] = "ball";
            ordered_json c = ordered_json::array();
            for (int i = 0; i < a.dim(); ++i) c.push_back(a.center()[i]);
            j["center"] = std::move(c);
            j["radius"] = a.radius();
            break;
        }
        case SetKind::Polytope: {
            j["kind"] = "polytope";
            ordered_json vs = ordered_json::array();
            for (const Vec& v : a.vertices()) {
                ordered_json row = ordered_json::array();
                for (int i = 0; i < a.dim(); ++i) row.push_back(v[i]);
                vs.push_back(std::move(row));
            }
            j["vertices"] = std::move(vs);
            break;
        }
    }
    return j;
}

ordered_json embedded_to_json(const EmbeddedElement& u) {
    ordered_json j;
    j["dimension"] = u.grid().dim();
    j["m"] = u.grid().size();
    ordered_json dirs = ordered_json::array();
    for (int k = 0; k < u.grid().size(); ++k) {
        ordered_json row = ordered_json::array();
        for (int i = 0; i < u.grid().dim(); ++i) row.push_back(u.grid().direction(k)[i]);
        dirs.push_back(std::move(row));
    }
    j["directions"] = std::move(dirs);
    ordered_json vals = ordered_json::array();
    for (int k = 0; k < u.size(); ++k) vals.push_back(u[k]);
    j["values"] = std::move(vals);
    return j;
}

ordered_json report_to_json(const std::string& test, const MomentReport& r, double sigma_gate) {
    ordered_json j;
    j["test"] = test;
    j["params"]["statistic"] = r.statistic;
    j["params"]["sigma_gate"] = sigma_gate;
    j["empirical"] = r.empirical;
    j["theoretical"] = r.theoretical;
    j["stderr"] = r.std_error;
    j["z"] = r.z_score;
    j["pass"] = r.pass(sigma_gate);
    return j;
}

ordered_json gh_result_to_json(const GhResult& r, bool include_witness) {
    ordered_json j;
    j["case"] = to_string(r.ghcase);
    if (r.value)
        j["value"] = set_to_json(*r.value);
    else
        j["value"] = nullptr;
    j["residuals"]["verification"] = r.residual;
    if (include_witness && r.witness) j["witness"] = embedded_to_json(*r.witness);
    return j;
}

}  // namespace setbm
