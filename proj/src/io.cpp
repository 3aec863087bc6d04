#include "dfield/io.hpp"

#include "dfield/errors.hpp"

namespace dfield {

namespace {

Json grid_json(const Grid& g) { return Json{{"d", g.d()}, {"N", g.n()}}; }

GridPtr grid_from_json(const Json& j) {
  if (!j.contains("grid")) throw ConfigurationError("missing grid");
  return make_grid(j.at("grid").at("d").get<int>(), j.at("grid").at("N").get<int>());
}

}  // namespace

Json to_json(const Cochain& c) {
  Json faces = Json::array(), re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    faces.push_back(c.face(i).center());
    Json r = Json::array(), m = Json::array();
    for (int a = 0; a < c.rows(); ++a)
      for (int b = 0; b < c.cols(); ++b) {
        r.push_back(c[i](a, b).real());
        m.push_back(c[i](a, b).imag());
      }
    re.push_back(std::move(r));
    im.push_back(std::move(m));
  }
  return Json{{"grid", grid_json(c.grid())},
              {"degree", c.degree()},
              {"shape", {c.rows(), c.cols()}},
              {"faces", std::move(faces)},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

Cochain cochain_from_json(const Json& j) {
  const GridPtr g = grid_from_json(j);
  const int rows = j.at("shape").at(0).get<int>(), cols = j.at("shape").at(1).get<int>();
  Cochain c(g, j.at("degree").get<int>(), rows, cols);
  const Json& faces = j.at("faces");
  if (faces.size() != c.size()) throw ShapeError("face count differs from the grid");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face f(faces[i].get<std::vector<int>>());
    auto value = c.at(f);
    for (int a = 0; a < rows; ++a)
      for (int b = 0; b < cols; ++b) {
        const std::size_t k = static_cast<std::size_t>(a) * cols + b;
        value(a, b) = Complex(j.at("re")[i].at(k).get<double>(), j.at("im")[i].at(k).get<double>());
      }
  }
  return c;
}

Json to_json(const GaugeField& u) {
  Json j = to_json(u.values());
  j["unitary"] = true;
  return j;
}

GaugeField gauge_field_from_json(const Json& j) { return GaugeField(cochain_from_json(j)); }

Json to_json(const Tensor& t) {
  Json entries = Json::array();
  t.for_each([&](const Face& e, const Face& f, double v) {
    if (v != 0.0) entries.push_back(Json{{"e", e.center()}, {"f", f.center()}, {"value", v}});
  });
  return Json{{"grid", grid_json(t.grid())}, {"gap", t.gap()}, {"radius", t.radius()}, {"entries", std::move(entries)}};
}

}  // namespace dfield
