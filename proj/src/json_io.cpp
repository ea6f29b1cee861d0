#include "roofs/json_io.hpp"

#include <fstream>
#include <sstream>

#include "roofs/error.hpp"

namespace roofs::io {

namespace {

cplx entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw Error(ErrorKind::Parse, "complex entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

json entry_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::Parse, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) throw Error(ErrorKind::Parse, std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(ErrorKind::Parse, "matrix must be a list of rows");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "matrix rows have unequal lengths");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = entry_from_json(j[i][k]);
  }
  return m;
}

json state_to_json(const DensityOperator& omega) {
  return {{"dim", omega.dim()}, {"matrix", matrix_to_json(omega.matrix())}};
}

DensityOperator state_from_json(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer()) throw Error(ErrorKind::Parse, "\"dim\" must be an integer");
  const CMatrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != d.get<int>() || m.cols() != d.get<int>()) {
    std::ostringstream os;
    os << "declared dim " << d.get<int>() << " but matrix is " << m.rows() << " x " << m.cols();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  return DensityOperator(m);
}

json decomposition_to_json(const PureDecomposition& dec) {
  json states = json::array();
  for (const PureState& s : dec.states) {
    json v = json::array();
    for (Eigen::Index k = 0; k < s.vector().size(); ++k) v.push_back(entry_to_json(s.vector()(k)));
    states.push_back(v);
  }
  return {{"weights", dec.weights}, {"states", states}};
}

QubitMap map_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw Error(ErrorKind::Parse, "\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "kraus") {
    const json& ops = field(j, "ops");
    if (!ops.is_array()) throw Error(ErrorKind::Parse, "\"ops\" must be a list of matrices");
    std::vector<CMatrix> mats;
    for (const json& o : ops) mats.push_back(matrix_from_json(o));
    return QubitMap::kraus(std::move(mats));
  }
  if (k == "axial") return QubitMap::axial(number(j, "alpha"), number(j, "beta"), number(j, "gamma"));
  if (k == "affine") {
    const CMatrix m = matrix_from_json(field(j, "m"));
    if (m.rows() != 4 || m.cols() != 4) throw Error(ErrorKind::ShapeMismatch, "affine map must be 4 x 4");
    if (m.imag().cwiseAbs().maxCoeff() > 0.0) throw Error(ErrorKind::Parse, "affine map must be real");
    return QubitMap::affine(m.real());
  }
  throw Error(ErrorKind::Parse, "unknown map kind \"" + k + "\"");
}

json map_to_json(const QubitMap& t) {
  if (t.is_axial()) {
    const AxialParams& p = t.axial_params();
    return {{"kind", "axial"}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
  }
  if (t.is_kraus()) {
    json ops = json::array();
    for (const CMatrix& a : t.kraus_ops().ops) ops.push_back(matrix_to_json(a));
    return {{"kind", "kraus"}, {"ops", ops}};
  }
  const QubitMap::Affine m = t.to_affine();
  json rows = json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return {{"kind", "affine"}, {"m", rows}};
}

EmbeddingSpec embedding_from_json(const json& j) {
  EmbeddingSpec spec;
  const json& blocks = field(j, "blocks");
  const json& amps = field(j, "amplitudes");
  if (!blocks.is_array() || !amps.is_array()) throw Error(ErrorKind::Parse, "blocks and amplitudes must be lists");
  for (const json& b : blocks) {
    if (!b.is_number_integer()) throw Error(ErrorKind::Parse, "block sizes must be integers");
    spec.blocks.push_back(b.get<int>());
  }
  for (const json& row : amps) {
    if (!row.is_array()) throw Error(ErrorKind::Parse, "amplitude rows must be lists");
    std::vector<cplx> r;
    for (const json& e : row) r.push_back(entry_from_json(e));
    spec.amplitudes.push_back(std::move(r));
  }
  validate_embedding(spec);
  return spec;
}

json report_to_json(const MeasureReport& r) {
  json out = {{"quantity", r.quantity}, {"value", r.value}, {"method", to_string(r.method)}};
  if (r.bounds) out["bounds"] = {{"lower", r.bounds->lower}, {"upper", r.bounds->upper}};
  if (r.discrepancy) out["discrepancy"] = *r.discrepancy;
  if (r.method == Method::Solver) out["flat"] = r.flat;
  if (r.decomposition) out["decomposition"] = decomposition_to_json(*r.decomposition);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace roofs::io
