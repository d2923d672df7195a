#include "mpsd/io.hpp"

#include <fstream>

#include "mpsd/errors.hpp"
#include "mpsd/measures.hpp"
#include "mpsd/psdfun.hpp"

namespace mpsd {

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("complex entry must be [re, im] or a number");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json matrix_json(const CMatrix& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(complex_json(A(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"m", A.rows()}, {"entries", std::move(rows)}};
}

CMatrix matrix_from_json(const json& j) {
  try {
    const json& rows = j.at("entries");
    const auto m = static_cast<Eigen::Index>(j.contains("m") ? j.at("m").get<int>() : static_cast<int>(rows.size()));
    if (m < 1 || static_cast<Eigen::Index>(rows.size()) != m) throw InputError("matrix must have m rows");
    CMatrix A(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const json& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != m) throw InputError("matrix row has wrong length");
      for (Eigen::Index c = 0; c < m; ++c) A(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
    }
    require_valid(A);
    return A;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json point_json(const Eigen::VectorXd& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x(i));
  return out;
}

Eigen::VectorXd point_from_json(const json& j) {
  if (j.is_number()) return Eigen::VectorXd::Constant(1, j.get<double>());
  if (!j.is_array() || j.empty()) throw InputError("point must be a non-empty array");
  Eigen::VectorXd x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("point coordinates must be numbers");
    x(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return x;
}

json verdict_json(const PsdVerdict& v) {
  return {{"verdict", v.verdict}, {"min_eig", v.min_eigenvalue}, {"defect", v.hermiticity_defect},
          {"witness", vector_json(v.witness)}, {"tol", v.tol}};
}

json points_json(const PointSet& X) {
  json pts = json::array();
  for (const auto& p : X.points()) pts.push_back(point_json(p));
  return {{"n", X.n()}, {"points", std::move(pts)}};
}

PointSet points_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
    return PointSet(n, std::move(pts));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed point set JSON: ") + e.what());
  }
}

json measure_json(const MatrixMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"xi", point_json(a.xi)}, {"W", matrix_json(a.W)}});
  return {{"n", mu.n()}, {"m", mu.m()}, {"atoms", std::move(atoms)}};
}

MatrixMeasure measure_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>(), m = j.at("m").get<int>();
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({point_from_json(a.at("xi")), matrix_from_json(a.at("W"))});
    return MatrixMeasure(n, m, std::move(atoms), "json");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed measure JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace mpsd
