#pragma once

#include <string>

#include "tomlink/birational.hpp"
#include "tomlink/pfaffian.hpp"

namespace fixtures {

struct MatrixData {
  std::string id;
  std::vector<long> ideal_weights;  // d1..d4
  long r;
  tomlink::WeightMatrix5 w;
  std::array<std::string, 10> entries;
};

inline MatrixData case_10985() {
  return {"10985", {6, 5, 4, 3}, 2, {{1, 2, 3, 4, 3, 4, 5, 5, 6, 7}},
          {"x1", "-x2*x3", "-x2^3+y4", "-x3^4+y3", "y4", "y3", "y2", "x2^2*y4-y2", "y1", "x1^4*y4"}};
}

inline MatrixData case_20652() {
  return {"20652", {2, 2, 1, 1}, 2, {{1, 1, 1, 1, 2, 2, 2, 2, 2, 2}},
          {"x1", "x2", "x3", "y3", "y1", "y2", "x2*y4-x3*y3+y1", "x1*y3-y2", "y4^2-y2", "x1*y3+y1"}};
}

inline MatrixData case_24097() {
  return {"24097", {2, 1, 1, 1}, 2, {{1, 1, 1, 2, 1, 1, 2, 1, 2, 2}},
          {"x1", "x2", "x3", "-y2^2-x3*y3", "y2", "y3", "y1", "y4", "x1*y3-y4^2", "-x2*y4-x3*y4+y1"}};
}

inline tomlink::RingPtr z_ring(const MatrixData& c) {
  return tomlink::Ring::make({"x1", "x2", "x3", "y1", "y2", "y3", "y4"},
                             {{1, 1, 1, c.ideal_weights[0], c.ideal_weights[1], c.ideal_weights[2], c.ideal_weights[3]}});
}

inline tomlink::SkewMatrix5 matrix(const MatrixData& c) {
  auto R = z_ring(c);
  std::array<tomlink::Polynomial, 10> up;
  for (std::size_t i = 0; i < 10; ++i) up[i] = tomlink::parse_polynomial(c.entries[i], R);
  return tomlink::SkewMatrix5(R, c.w, up);
}

inline tomlink::FanoCase fano(const MatrixData& c, const std::vector<std::pair<std::string, std::string>>& basket) {
  tomlink::FanoCase fc;
  fc.id = c.id;
  fc.r = c.r;
  for (std::size_t j = 0; j < 4; ++j) fc.d[j] = c.ideal_weights[j];
  fc.M = matrix(c);
  for (const auto& [type, locus] : basket) fc.basket.points.push_back({tomlink::parse_quotient_point(type), locus});
  return fc;
}

inline tomlink::FanoCase fano_10985() { return fano(case_10985(), {{"1/2(1,1,1)", "s"}, {"1/6(1,1,5)", "y1"}}); }
inline tomlink::FanoCase fano_20652() {
  return fano(case_20652(), {{"1/2(1,1,1)", "s"}, {"1/2(1,1,1)", "y1,y2"}, {"1/2(1,1,1)", "y1,y2"}});
}
inline tomlink::FanoCase fano_24097() { return fano(case_24097(), {{"1/2(1,1,1)", "s"}, {"1/2(1,1,1)", "y1"}}); }

inline tomlink::TraceOptions fast_trace() {
  tomlink::TraceOptions o;
  o.verify_unprojection = false;
  return o;
}

}  // namespace fixtures
