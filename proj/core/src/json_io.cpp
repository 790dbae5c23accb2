#include "bmslice/json_io.hpp"

#include <json.hpp>

namespace bmslice {

using nlohmann::json;

namespace {

// nlohmann reports a byte offset; convert to 1-based line/column.
std::pair<int, int> line_column(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("JSON parse error: ") + e.what(), line, col);
  }
}

Eigen::MatrixXd read_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty())
    throw ParseError(std::string(what) + ": expected a non-empty array of rows", 1, 1);
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
      throw ParseError(std::string(what) + ": ragged rows", 1, 1);
    for (int j = 0; j < c; ++j) {
      if (!rows[i][j].is_number())
        throw ParseError(std::string(what) + ": non-numeric entry", 1, 1);
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SymBody read_body_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("body: missing integer field \"n\"", 1, 1);
  if (!j.contains("rep") || !j["rep"].is_string())
    throw ParseError("body: missing string field \"rep\"", 1, 1);
  if (!j.contains("gens")) throw ParseError("body: missing field \"gens\"", 1, 1);

  int n = j["n"].get<int>();
  std::string rep_s = j["rep"].get<std::string>();
  if (rep_s != "V" && rep_s != "H")
    throw ParseError("body: \"rep\" must be \"V\" or \"H\"", 1, 1);

  Eigen::MatrixXd g = read_matrix(j["gens"], "body gens");
  if (g.cols() != n) throw ParseError("body: generator rows must have length n", 1, 1);
  std::vector<Eigen::VectorXd> gens;
  gens.reserve(g.rows());
  for (int i = 0; i < g.rows(); ++i) gens.push_back(g.row(i).transpose());
  return SymBody(n, rep_s == "V" ? Rep::V : Rep::H, std::move(gens));
}

std::string write_body_json(const SymBody& a, int indent) {
  json j;
  j["n"] = a.dim();
  j["rep"] = a.rep() == Rep::V ? "V" : "H";
  json gens = json::array();
  for (const auto& g : a.gens()) {
    json row = json::array();
    for (int i = 0; i < g.size(); ++i) row.push_back(g[i]);
    gens.push_back(std::move(row));
  }
  j["gens"] = std::move(gens);
  return j.dump(indent);
}

Ellipsoid read_ellipsoid_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.contains("M")) throw ParseError("ellipsoid: missing field \"M\"", 1, 1);
  return Ellipsoid(read_matrix(j["M"], "ellipsoid M"));
}

std::string write_ellipsoid_json(const Ellipsoid& e, int indent) {
  json j;
  j["M"] = matrix_to_json(e.M());
  return j.dump(indent);
}

std::string write_posdef_json(const PosDef& p, int indent) {
  json j;
  j["P"] = matrix_to_json(p.P());
  return j.dump(indent);
}

std::string write_mvee_report_json(const MveeReport& r, int indent) {
  json j;
  j["M"] = matrix_to_json(r.ellipsoid.M());
  j["weights"] = std::vector<double>(r.weights.data(), r.weights.data() + r.weights.size());
  j["epsilon"] = r.epsilon;
  j["iterations"] = r.iterations;
  return j.dump(indent);
}

std::string write_audit_report_json(const SliceAuditReport& r, int indent) {
  json j;
  j["h_invariant"] = r.h_invariant;
  j["saturation_open_proxy"] = r.saturation_open_proxy;
  j["closedness_proxy"] = r.closedness_proxy;
  j["checks_run"] = r.checks_run;
  j["all_passed"] = r.all_passed();
  json witnesses = json::array();
  for (const auto& w : r.disjointness_witnesses) {
    json entry;
    entry["g"] = matrix_to_json(w.g);
    entry["pd_distance"] = w.pd_distance;
    entry["sample_index"] = w.sample_index;
    witnesses.push_back(std::move(entry));
  }
  j["disjointness_witnesses"] = std::move(witnesses);
  return j.dump(indent);
}

std::string write_net_report_json(const NetReport& r, int indent) {
  json j;
  j["eps"] = r.eps;
  j["coverage_fraction"] = r.coverage_fraction;
  j["center_count"] = r.centers.size();
  json centers = json::array();
  for (const auto& c : r.centers) {
    centers.push_back(json::parse(write_body_json(c.rep(), -1)));
  }
  j["centers"] = std::move(centers);
  return j.dump(indent);
}

}  // namespace bmslice
