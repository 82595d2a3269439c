#include "kpso3/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kpso3 {

namespace {

std::string mode_name(DiscMode m) {
    return m == DiscMode::half_disc ? "half_disc" : "full_disc";
}

DiscMode mode_from_name(const std::string& s) {
    if (s == "half_disc") return DiscMode::half_disc;
    if (s == "full_disc") return DiscMode::full_disc;
    throw std::invalid_argument("unknown disc mode: " + s);
}

}  // namespace

nlohmann::json to_json(const OrbitPoint& p) {
    return {{"rho", p.rho}, {"theta", p.theta}, {"mode", mode_name(p.mode)}};
}

OrbitPoint orbit_point_from_json(const nlohmann::json& j) {
    return make_orbit_point(j.at("rho").get<double>(), j.at("theta").get<double>(),
                            mode_from_name(j.at("mode").get<std::string>()));
}

nlohmann::json to_json(const SynthesisResult& r) {
    return {{"T_min", r.t_min},
            {"alpha", r.alpha},
            {"A_k", {r.a_k.a(), r.a_k.b(), r.a_k.c()}},
            {"A_p", {r.a_p.a(), r.a_p.b(), r.a_p.c()}},
            {"conjugator",
             {{"angle", r.conjugator.angle()},
              {"component", r.conjugator.component() == Component::plus ? "plus" : "minus"}}}};
}

GroupElement read_group_element(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    Eigen::Matrix3d m;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        const nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_array() || j.size() != 3) {
            throw std::invalid_argument("matrix JSON must be a 3x3 array");
        }
        for (int r = 0; r < 3; ++r) {
            if (!j[r].is_array() || j[r].size() != 3) {
                throw std::invalid_argument("matrix JSON must be a 3x3 array");
            }
            for (int c = 0; c < 3; ++c) m(r, c) = j[r][c].get<double>();
        }
    } else {
        std::istringstream values(text);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                if (!(values >> m(r, c))) {
                    throw std::invalid_argument("matrix file must hold 9 decimals");
                }
            }
        }
    }
    return GroupElement::from_matrix(m);
}

GroupElement read_group_element_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    return read_group_element(in);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_frontier_csv(std::ostream& out, const FrontierCurve& c) {
    out << "alpha,rho,theta\n";
    for (const auto& [alpha, p] : c.samples) {
        out << format_number(alpha) << ',' << format_number(p.rho) << ','
            << format_number(p.theta) << '\n';
    }
}

}  // namespace kpso3
