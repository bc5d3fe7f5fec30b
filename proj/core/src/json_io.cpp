#include "qdilog/json_io.hpp"

#include <json.hpp>

namespace qdilog {

using nlohmann::json;

namespace {

template <class F>
auto guarded(std::string_view text, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad JSON: ") + e.what());
  }
}

json pair(complex z) { return json::array({z.real(), z.imag()}); }
complex unpair(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

std::string to_json(const RTensor& r, int indent) {
  json entries = json::array();
  const auto& m = r.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(pair(m(i, j)));
  return json{{"N", r.level()}, {"k", r.root_exponent()}, {"entries", std::move(entries)}}.dump(indent);
}

RTensor rtensor_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    const int n = j.at("N").get<int>();
    const auto& e = j.at("entries");
    const auto dim = static_cast<Eigen::Index>(n) * n;
    if (n < 2 || static_cast<Eigen::Index>(e.size()) != dim * dim) {
      throw Error(ErrorKind::ParseError, "entries must hold N^4 pairs");
    }
    Eigen::MatrixXcd m(dim, dim);
    std::size_t o = 0;
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = unpair(e.at(o++));
    return RTensor(n, j.at("k").get<int>(), std::move(m));
  });
}

std::string to_json(const LinkDiagram& d, int indent) {
  const auto labels = d.edge_labels();
  json crossings = json::array();
  for (const auto& x : d.crossings()) {
    json slots = json::array();
    for (int e : x.edges) slots.push_back(labels[static_cast<std::size_t>(e)]);
    crossings.push_back({{"id", x.id}, {"slots", slots}, {"over_pair", x.over_pair}});
  }
  json edges = json::array();
  for (const auto& e : d.edges()) {
    json ends = json::array();
    for (const auto& end : e.ends) ends.push_back({end.crossing, end.slot});
    edges.push_back({{"label", e.label}, {"ends", ends}});
  }
  json faces = json::array();
  for (const auto& f : d.faces()) {
    json walks = json::array();
    for (const auto& b : f.boundaries) {
      json corners = json::array();
      for (const auto& c : b.corners) corners.push_back({c.crossing, c.sector});
      json w{{"corners", corners}, {"component", b.component}};
      w["loop"] = b.loop_edge >= 0 ? json(labels[static_cast<std::size_t>(b.loop_edge)]) : json(nullptr);
      walks.push_back(std::move(w));
    }
    faces.push_back({{"boundaries", walks}});
  }
  return json{{"crossings", crossings}, {"edges", edges}, {"faces", faces}}.dump(indent);
}

LinkDiagram diagram_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    std::vector<std::array<int, 4>> xs;
    for (const auto& x : j.at("crossings")) {
      const auto slots = x.at("slots").get<std::vector<int>>();
      if (slots.size() != 4) throw Error(ErrorKind::ParseError, "crossing needs 4 slots");
      const int s0 = (x.value("over_pair", 1) + 3) & 3;
      std::array<int, 4> t{};
      for (int s = 0; s < 4; ++s) t[static_cast<std::size_t>(s)] = slots[static_cast<std::size_t>((s0 + s) & 3)];
      xs.push_back(t);
    }
    std::vector<int> loops;
    for (const auto& e : j.at("edges"))
      if (e.at("ends").empty()) loops.push_back(e.at("label").get<int>());
    return compute_faces(LinkDiagram::from_terms(xs, loops));
  });
}

std::string to_json(const ChargeAssignment& a, int indent) {
  json charges = json::array();
  for (std::size_t v = 0; v < a.crossing_count(); ++v)
    for (int s = 0; s < 4; ++s)
      charges.push_back({{"crossing", v}, {"sector", s}, {"value", a(static_cast<int>(v), s)}});
  return json{{"N", a.level()}, {"digest", a.digest()}, {"charges", charges}}.dump(indent);
}

ChargeAssignment charges_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    std::vector<std::array<int, 4>> values;
    for (const auto& c : j.at("charges")) {
      const auto v = c.at("crossing").get<std::size_t>();
      const int s = c.at("sector").get<int>();
      if (s < 0 || s > 3) throw Error(ErrorKind::ParseError, "sector must be 0..3");
      if (values.size() <= v) values.resize(v + 1, std::array<int, 4>{0, 0, 0, 0});
      values[v][static_cast<std::size_t>(s)] = c.at("value").get<int>();
    }
    return ChargeAssignment(j.at("N").get<int>(), std::move(values));
  });
}

std::string to_json(const InvariantResult& r, int indent) {
  json j{{"N", r.level},
         {"k", r.root_exponent},
         {"value_re", r.value.real()},
         {"value_im", r.value.imag()},
         {"invariant_re", r.invariant.real()},
         {"invariant_im", r.invariant.imag()},
         {"abs", std::abs(r.value)},
         {"engine", std::string(to_string(r.engine))},
         {"charge_digest", r.charge_digest},
         {"cut_edge", r.cut_label}};
  if (r.magnitude) j["magnitude"] = *r.magnitude;
  return j.dump(indent);
}

InvariantResult invariant_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    InvariantResult r;
    r.level = j.at("N").get<int>();
    r.root_exponent = j.at("k").get<int>();
    r.value = {j.at("value_re").get<double>(), j.at("value_im").get<double>()};
    r.invariant = {j.at("invariant_re").get<double>(), j.at("invariant_im").get<double>()};
    const auto engine = j.at("engine").get<std::string>();
    if (engine == "brute") r.engine = Engine::Brute;
    else if (engine == "tensor") r.engine = Engine::Tensor;
    else throw Error(ErrorKind::ParseError, "unknown engine " + engine);
    r.charge_digest = j.at("charge_digest").get<std::string>();
    r.cut_label = j.value("cut_edge", 0);
    if (j.contains("magnitude")) r.magnitude = j.at("magnitude").get<double>();
    return r;
  });
}

std::string to_json(const OctahedronReport& r, int indent) {
  json charges = json::array();
  for (const auto& c : r.charges) charges.push_back({c.p, c.q, c.r});
  return json{{"N", r.level},
              {"seed", r.seed},
              {"s", r.s},
              {"charges", charges},
              {"c_m", r.c_m},
              {"c_square", r.c_square},
              {"configurations", r.configurations},
              {"nonzero", r.nonzero},
              {"zero_mismatch", r.zero_mismatch},
              {"ratio_re", r.ratio.real()},
              {"ratio_im", r.ratio.imag()},
              {"spread", r.spread},
              {"tolerance", r.tolerance},
              {"constant", r.constant}}
      .dump(indent);
}

OctahedronReport octahedron_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    OctahedronReport r;
    r.level = j.at("N").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.s = j.at("s").get<std::array<double, 6>>();
    for (const auto& c : j.at("charges")) r.charges.push_back({c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()});
    r.c_m = j.at("c_m").get<std::array<int, 4>>();
    r.c_square = j.at("c_square").get<std::array<int, 4>>();
    r.configurations = j.at("configurations").get<std::int64_t>();
    r.nonzero = j.at("nonzero").get<std::int64_t>();
    r.zero_mismatch = j.at("zero_mismatch").get<std::int64_t>();
    r.ratio = {j.at("ratio_re").get<double>(), j.at("ratio_im").get<double>()};
    r.spread = j.at("spread").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.constant = j.at("constant").get<bool>();
    return r;
  });
}

}  // namespace qdilog
