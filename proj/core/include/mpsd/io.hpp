#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mpsd/matcore.hpp"

namespace mpsd {

class PointSet;
class MatrixMeasure;

using json = nlohmann::json;

// {"m": int, "entries": [[[re, im], ...], ...]} row-major.
json matrix_json(const CMatrix& A);
CMatrix matrix_from_json(const json& j);

// [[re, im], ...]
json vector_json(const CVector& v);
CVector vector_from_json(const json& j);

// Real vector as a plain array.
json point_json(const Eigen::VectorXd& x);
Eigen::VectorXd point_from_json(const json& j);

// {"verdict", "min_eig", "defect", "witness", "tol"}
json verdict_json(const PsdVerdict& v);

// {"n": int, "points": [[...], ...]}
json points_json(const PointSet& X);
PointSet points_from_json(const json& j);

// {"n": int, "m": int, "atoms": [{"xi": [...], "W": matrix}, ...]}
json measure_json(const MatrixMeasure& mu);
MatrixMeasure measure_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace mpsd
