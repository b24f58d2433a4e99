#ifndef POPUC_JSON_IO_HPP
#define POPUC_JSON_IO_HPP

#include "json.hpp"

#include "popuc/circle.hpp"
#include "popuc/linalg.hpp"
#include "popuc/polynomial.hpp"
#include "popuc/rank_one.hpp"

namespace popuc {

using Json = nlohmann::json;

// Complex values are [re, im] pairs everywhere.
Json to_json(Complex z);
Json to_json(const CirclePoint& p);
Json to_json(const CyclicSet& s);
Json to_json(const std::vector<CirclePoint>& points);
Json to_json(const VerblunskyWord& w);
/// Coefficients c_0 .. c_n.
Json to_json(const Polynomial& p);
/// Row-major array of rows of [re, im] pairs.
Json to_json(const Matrix& m);
/// [{point: [re, im], weight: w}, ...]
Json to_json(const SpectralMeasure& m);

/// Accepts [re, im] or a bare real number. Throws ErrorKind::InvalidArgument.
Complex complex_from_json(const Json& j);
CirclePoint circle_point_from_json(const Json& j);
VerblunskyWord word_from_json(const Json& j);

}  // namespace popuc

#endif  // POPUC_JSON_IO_HPP
