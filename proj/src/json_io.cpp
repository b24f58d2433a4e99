#include "popuc/json_io.hpp"

namespace popuc {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CirclePoint& p) { return to_json(p.value()); }

Json to_json(const std::vector<CirclePoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(to_json(p));
  return out;
}

Json to_json(const CyclicSet& s) { return to_json(s.points()); }

Json to_json(const VerblunskyWord& w) {
  Json out = Json::array();
  for (const Complex a : w.coefficients()) out.push_back(to_json(a));
  return out;
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const Complex c : p.coefficients()) out.push_back(to_json(c));
  return out;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(Complex(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const SpectralMeasure& m) {
  Json out = Json::array();
  for (const auto& atom : m.atoms()) {
    out.push_back(Json{{"point", to_json(atom.point)}, {"weight", atom.weight}});
  }
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw Error(ErrorKind::InvalidArgument, "expected a complex number as [re, im], got " + j.dump());
}

CirclePoint circle_point_from_json(const Json& j) { return CirclePoint(complex_from_json(j)); }

VerblunskyWord word_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, "expected an array of [re, im] pairs");
  std::vector<Complex> coefficients;
  coefficients.reserve(j.size());
  for (const auto& item : j) coefficients.push_back(complex_from_json(item));
  return VerblunskyWord(std::move(coefficients));
}

}  // namespace popuc
