#pragma once

#include <string>

#include "json.hpp"
#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"
#include "ohmlab/upoly.hpp"

namespace ohmlab {

using Json = nlohmann::json;

// Parses and validates (including the embedding, when a rotation is given).
Network network_from_json(const Json& j);
Json network_to_json(const Network& net);
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
Json read_json_file(const std::string& path);

Json to_json(const Rational& q);
Json to_json(const RatMatrix& m);
Json to_json(const LaurentPoly& p);
Json to_json(const RatFunc& f);
Json to_json(const Matrix<RatFunc>& m);
Json to_json(const Matrix<LaurentPoly>& m);

Rational rational_from_json(const Json& j);
RatMatrix ratmatrix_from_json(const Json& j);
LaurentPoly laurent_from_json(const Json& j);

}  // namespace ohmlab
