#include "gsteer/state_io.hpp"

#include <fstream>

namespace gsteer {

using nlohmann::json;

json cm_to_json(const CovarianceMatrix& g) {
    json rows = json::array();
    for (int i = 0; i < g.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < g.dim(); ++j) row.push_back(g.mat()(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"n_modes", g.n_modes()}, {"ordering", kOrderingTag}, {"matrix", rows}};
}

CovarianceMatrix cm_from_json(const json& j) {
    if (!j.is_object())
        throw InvalidState("state: top-level JSON value must be an object");
    if (!j.contains("n_modes") || !j["n_modes"].is_number_integer())
        throw InvalidState("state: missing or non-integer \"n_modes\"");
    if (!j.contains("ordering") || !j["ordering"].is_string())
        throw InvalidState("state: missing or non-string \"ordering\"");
    if (!j.contains("matrix") || !j["matrix"].is_array())
        throw InvalidState("state: missing or non-array \"matrix\"");

    const std::string ordering = j["ordering"].get<std::string>();
    if (ordering != kOrderingTag)
        throw InvalidState("state: unsupported quadrature ordering \"" + ordering +
                           "\" (expected \"" + kOrderingTag + "\")");

    const int n = j["n_modes"].get<int>();
    if (n <= 0) throw InvalidState("state: n_modes must be positive");
    const int d = 2 * n;

    const json& rows = j["matrix"];
    if (static_cast<int>(rows.size()) != d)
        throw InvalidState("state: matrix must have 2 * n_modes rows");
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw InvalidState("state: matrix row " + std::to_string(i) +
                               " must have 2 * n_modes entries");
        for (int k = 0; k < d; ++k) {
            if (!row[k].is_number())
                throw InvalidState("state: matrix entry (" + std::to_string(i) + ", " +
                                   std::to_string(k) + ") is not a number");
            m(i, k) = row[k].get<double>();
        }
    }
    try {
        return CovarianceMatrix(n, std::move(m));
    } catch (const std::invalid_argument& e) {
        throw InvalidState(std::string("state: ") + e.what());
    }
}

CovarianceMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidState("state: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidState("state: \"" + path + "\" is not valid JSON: " + e.what());
    }
    return cm_from_json(j);
}

void write_state_file(const std::string& path, const CovarianceMatrix& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("state: cannot open \"" + path + "\" for writing");
    out << cm_to_string(g);
    if (!out) throw std::runtime_error("state: writing \"" + path + "\" failed");
}

std::string cm_to_string(const CovarianceMatrix& g) { return cm_to_json(g).dump(2) + "\n"; }

} // namespace gsteer
