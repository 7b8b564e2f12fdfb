// JSON readers and writers for source distributions and auxiliary channels.
//
// Distribution file:
//   { "alphabet_x": ["0","1"], "alphabet_y": ["0","1"],
//     "pmf": [[0.4, 0.1], [0.1, 0.4]] }          row index = x
//
// Auxiliary-channel file:
//   { "card_u": 2, "card_u1": 1, "card_u2": 1,
//     "cond": { "0,0": [..], "0,1": [..], ... } }  rows over (u,u1,u2), row-major
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coordination/pmf.hpp"

namespace coordination {

/// 15 significant digits, as printf %.15g.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace detail {

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": parse error: " + e.what());
    }
}

inline std::vector<double> number_list(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(what + ": expected a number");
        out.push_back(v.get<double>());
    }
    return out;
}

inline std::vector<std::string> label_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    const auto& a = j.at(key);
    if (!a.is_array()) throw std::invalid_argument(std::string(key) + ": expected a list");
    std::vector<std::string> out;
    for (const auto& v : a) {
        out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
}

}  // namespace detail

inline JointPmf joint_pmf_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("pmf")) {
        throw std::invalid_argument("distribution: missing field 'pmf'");
    }
    const auto& m = j.at("pmf");
    if (!m.is_array() || m.empty()) throw std::invalid_argument("pmf: expected a non-empty matrix");
    std::vector<std::vector<double>> rows;
    for (const auto& r : m) rows.push_back(detail::number_list(r, "pmf row"));
    JointPmf shape = JointPmf::from_rows(rows);
    std::vector<double> flat(shape.probs().begin(), shape.probs().end());
    return JointPmf(shape.nx(), shape.ny(), std::move(flat),
                    detail::label_list(j, "alphabet_x"), detail::label_list(j, "alphabet_y"));
}

inline JointPmf load_joint_pmf(const std::string& path) {
    return joint_pmf_from_json(detail::read_json_file(path));
}

inline nlohmann::json to_json(const JointPmf& q) {
    nlohmann::json j;
    auto labels = [](const std::vector<std::string>& given, std::size_t n) {
        if (!given.empty()) return given;
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
        return out;
    };
    j["alphabet_x"] = labels(q.labels_x(), q.nx());
    j["alphabet_y"] = labels(q.labels_y(), q.ny());
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t x = 0; x < q.nx(); ++x) {
        nlohmann::json r = nlohmann::json::array();
        for (std::size_t y = 0; y < q.ny(); ++y) r.push_back(q(x, y));
        rows.push_back(std::move(r));
    }
    j["pmf"] = std::move(rows);
    return j;
}

/// The source shape is needed because rows for zero-probability pairs may be omitted.
inline AuxChannel aux_channel_from_json(const nlohmann::json& j, std::size_t nx, std::size_t ny) {
    for (const char* key : {"card_u", "card_u1", "card_u2", "cond"}) {
        if (!j.contains(key)) throw std::invalid_argument(std::string("aux channel: missing field '") + key + "'");
    }
    auto card = [&](const char* key) {
        const auto& v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw std::invalid_argument(std::string(key) + ": expected a positive integer");
        }
        return static_cast<std::size_t>(v.get<long long>());
    };
    const std::size_t cu = card("card_u");
    const std::size_t cu1 = card("card_u1");
    const std::size_t cu2 = card("card_u2");
    const auto& cond = j.at("cond");
    if (!cond.is_object()) throw std::invalid_argument("cond: expected an object keyed by \"x,y\"");

    std::vector<std::vector<double>> rows(nx * ny);
    for (auto it = cond.begin(); it != cond.end(); ++it) {
        std::size_t x = 0;
        std::size_t y = 0;
        char comma = 0;
        std::istringstream key(it.key());
        if (!(key >> x >> comma >> y) || comma != ',' || !(key >> std::ws).eof()) {
            throw std::invalid_argument("cond: malformed key '" + it.key() + "'");
        }
        if (x >= nx || y >= ny) throw std::invalid_argument("cond: key out of range '" + it.key() + "'");
        rows[x * ny + y] = detail::number_list(it.value(), "cond row " + it.key());
    }
    return AuxChannel(nx, ny, cu, cu1, cu2, std::move(rows));
}

inline AuxChannel load_aux_channel(const std::string& path, std::size_t nx, std::size_t ny) {
    return aux_channel_from_json(detail::read_json_file(path), nx, ny);
}

inline nlohmann::json to_json(const AuxChannel& ch) {
    nlohmann::json j;
    j["card_u"] = ch.card_u();
    j["card_u1"] = ch.card_u1();
    j["card_u2"] = ch.card_u2();
    nlohmann::json cond = nlohmann::json::object();
    for (std::size_t x = 0; x < ch.nx(); ++x) {
        for (std::size_t y = 0; y < ch.ny(); ++y) {
            if (!ch.has_row(x, y)) continue;
            const auto r = ch.row(x, y);
            cond[std::to_string(x) + "," + std::to_string(y)] = std::vector<double>(r.begin(), r.end());
        }
    }
    j["cond"] = std::move(cond);
    return j;
}

}  // namespace coordination
