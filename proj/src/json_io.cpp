#include "qceq/json_io.hpp"

#include <fstream>

namespace qceq {

json gate_to_json(const Gate& g) {
  json j;
  j["kind"] = kind_name(g.kind);
  j["wires"] = g.wires;
  j["params"] = g.params;
  if (g.kind == Kind::CTRL) {
    j["pattern"] = g.pattern;
    j["base"] = g.base ? gate_to_json(*g.base) : json(nullptr);
  }
  return j;
}

Gate gate_from_json(const json& j) {
  try {
    Gate g;
    g.kind = kind_from_name(j.at("kind").get<std::string>());
    g.wires = j.value("wires", std::vector<int>{});
    g.params = j.value("params", std::vector<double>{});
    if (g.kind == Kind::CTRL) {
      g.pattern = j.at("pattern").get<std::string>();
      g.base = std::make_shared<const Gate>(gate_from_json(j.at("base")));
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad gate object: ") + e.what());
  }
}

json circuit_to_json(const Circuit& c) {
  json gs = json::array();
  for (const auto& g : c.gates) gs.push_back(gate_to_json(g));
  return json{{"n_in", c.n_in}, {"n_out", c.n_out}, {"gates", gs}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  try {
    c.n_in = j.at("n_in").get<int>();
    c.n_out = j.at("n_out").get<int>();
    for (const auto& g : j.at("gates")) c.gates.push_back(gate_from_json(g));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad circuit object: ") + e.what());
  }
  validate(c);
  return c;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  try {
    const json& rows = j.is_object() ? j.at("matrix") : j;
    const auto r = static_cast<Eigen::Index>(rows.size());
    if (r == 0) throw Error(ErrorCode::ParseError, "empty matrix");
    const auto cc = static_cast<Eigen::Index>(rows[0].size());
    Matrix m(r, cc);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != cc) throw Error(ErrorCode::ParseError, "ragged matrix");
      for (Eigen::Index k = 0; k < cc; ++k) {
        const json& e = rows[i][k];
        m(i, k) = e.is_array() ? cplx(e.at(0).get<double>(), e.at(1).get<double>()) : cplx(e.get<double>(), 0.0);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad matrix: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qceq
