#pragma once

#include <fstream>
#include <memory>

#include <json.hpp>

#include "ncpot/builtins.hpp"

// JSON (de)serialization for every object the CLI exchanges.  All documents
// are versioned with "schema": "ncpot/1".
//
//   quiver      {"vertices": ["v0", ...],
//                "edges": [{"name":"x","src":"v0","tgt":"v0","deg":1}, ...]}
//   polynomial  [{"coeff":{"num":1,"den":1},"path":["x","y"]}, ...]
//   cyclic      same but with "cycle" instead of "path"
//   potential   {"schema":"ncpot/1","quiver":{...},"potential":[cyclic terms]}
//   rep point   {"schema":"ncpot/1","dims":{"v0":3},
//                "matrices":{"x":[[[re,im],...],...]}}   (rows = dim(src))
//   group       {"schema":"ncpot/1","type":"abelian","order":7,
//                "generators":[[1,2,4]]}
//               {"schema":"ncpot/1","type":"explicit","elements":[mat,...],
//                "irreps":[{"label":"std","dim":2,"mats":[mat,...]}]}

namespace ncpot {

using nlohmann::json;
using nlohmann::ordered_json;

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

// ---- rationals ------------------------------------------------------------

inline ordered_json rat_to_json(const Rat& r) {
  ordered_json j;
  const mpz_class num = r.get_num(), den = r.get_den();
  if (num.fits_slong_p()) j["num"] = num.get_si();
  else j["num"] = num.get_str();
  if (den.fits_slong_p()) j["den"] = den.get_si();
  else j["den"] = den.get_str();
  return j;
}

inline Rat rat_from_json(const json& j) {
  auto part = [&](const char* key) -> mpz_class {
    if (!j.contains(key)) throw io_error("coefficient missing \"" + std::string(key) + "\"");
    const json& v = j.at(key);
    if (v.is_number_integer()) return mpz_class((long)v.get<long long>());
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw io_error("coefficient field \"" + std::string(key) + "\" must be an integer");
  };
  mpz_class num = part("num"), den = part("den");
  if (den == 0) throw io_error("coefficient with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat scalar_rat(const Scalar& s) {
  if (!s.is_rat()) throw io_error("only rational coefficients are serializable");
  return s.ratval();
}

// ---- quiver ---------------------------------------------------------------

inline ordered_json quiver_to_json(const Quiver& q) {
  ordered_json j;
  j["vertices"] = q.verts;
  j["edges"] = ordered_json::array();
  for (auto& e : q.edges)
    j["edges"].push_back({{"name", e.name},
                          {"src", q.verts[e.src]},
                          {"tgt", q.verts[e.tgt]},
                          {"deg", e.deg}});
  return j;
}

inline Quiver quiver_from_json(const json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw io_error("quiver needs \"vertices\" and \"edges\"");
  std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
  std::map<std::string, int> vidx;
  for (size_t i = 0; i < vs.size(); ++i) vidx[vs[i]] = (int)i;
  std::vector<Edge> es;
  for (auto& ej : j.at("edges")) {
    Edge e;
    e.name = ej.at("name").get<std::string>();
    auto vertex = [&](const char* key) {
      std::string v = ej.at(key).get<std::string>();
      auto it = vidx.find(v);
      if (it == vidx.end()) throw io_error("edge " + e.name + ": unknown vertex " + v);
      return it->second;
    };
    e.src = vertex("src");
    e.tgt = vertex("tgt");
    e.deg = ej.value("deg", 1);
    if (e.deg <= 0) throw io_error("edge " + e.name + ": degree must be positive");
    es.push_back(e);
  }
  try {
    return Quiver(std::move(vs), std::move(es));
  } catch (const std::runtime_error& e) {
    throw io_error(e.what());
  }
}

// ---- polynomials ----------------------------------------------------------

inline ordered_json ncpoly_to_json(const NCPoly& a) {
  ordered_json terms = ordered_json::array();
  for (auto& [p, c] : a.terms) {
    ordered_json t;
    t["coeff"] = rat_to_json(scalar_rat(c));
    ordered_json word = ordered_json::array();
    for (int e : p.es) word.push_back(a.q->edges[e].name);
    t["path"] = word;
    if (p.es.empty()) t["vertex"] = a.q->verts[p.vtx];
    terms.push_back(t);
  }
  return terms;
}

inline ordered_json cyclic_to_json(const CyclicPoly& a) {
  ordered_json terms = ordered_json::array();
  for (auto& [p, c] : a.terms) {
    ordered_json t;
    t["coeff"] = rat_to_json(scalar_rat(c));
    ordered_json word = ordered_json::array();
    for (int e : p.es) word.push_back(a.q->edges[e].name);
    t["cycle"] = word;
    terms.push_back(t);
  }
  return terms;
}

inline Path path_from_names(const Quiver& q, const json& names) {
  Path p;
  for (auto& n : names) {
    try {
      p.es.push_back(q.edge_index(n.get<std::string>()));
    } catch (const std::runtime_error& e) {
      throw io_error(e.what());
    }
  }
  if (!p.es.empty()) p.vtx = q.edges[p.es.front()].src;
  if (!path_composable(q, p)) throw io_error("non-composable path in input");
  return p;
}

inline NCPoly ncpoly_from_json(const Quiver& q, const json& j) {
  NCPoly a(q);
  for (auto& t : j) {
    Path p = path_from_names(q, t.at("path"));
    if (p.es.empty() && t.contains("vertex"))
      p.vtx = q.vertex_index(t.at("vertex").get<std::string>());
    a.add(p, Scalar(rat_from_json(t.at("coeff"))));
  }
  return a;
}

inline CyclicPoly cyclic_from_json(const Quiver& q, const json& j) {
  CyclicPoly a(q);
  for (auto& t : j) {
    Path p = path_from_names(q, t.at("cycle"));
    if (p.es.empty()) throw io_error("cyclic term with empty cycle");
    if (!path_closed(q, p)) throw io_error("cycle is not closed");
    a.add_canonical(canonical_rotation(q, p), Scalar(rat_from_json(t.at("coeff"))));
  }
  return a;
}

// ---- potential files ------------------------------------------------------

// owns the quiver so the contained polynomial's back-pointer stays valid
struct PotentialFile {
  std::shared_ptr<Quiver> quiver;
  CyclicPoly potential;
};

inline ordered_json potential_to_json(const Quiver& q, const CyclicPoly& phi) {
  ordered_json j;
  j["schema"] = "ncpot/1";
  j["quiver"] = quiver_to_json(q);
  j["potential"] = cyclic_to_json(phi);
  return j;
}

inline PotentialFile potential_from_json(const json& j) {
  if (!j.contains("quiver") || !j.contains("potential"))
    throw io_error("potential file needs \"quiver\" and \"potential\"");
  PotentialFile f;
  f.quiver = std::make_shared<Quiver>(quiver_from_json(j.at("quiver")));
  f.potential = cyclic_from_json(*f.quiver, j.at("potential"));
  return f;
}

inline PotentialFile load_potential(const std::string& path) {
  return potential_from_json(load_json(path));
}

// ---- complex matrices -----------------------------------------------------

inline ordered_json mat_to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline Mat mat_from_json(const json& j, int rows = -1, int cols = -1) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw io_error("matrix must be a non-empty array of rows");
  int R = (int)j.size(), C = (int)j.front().size();
  if ((rows >= 0 && R != rows) || (cols >= 0 && C != cols))
    throw io_error("matrix has shape " + std::to_string(R) + "x" +
                   std::to_string(C) + " but " + std::to_string(rows) + "x" +
                   std::to_string(cols) + " was expected");
  Mat m(R, C);
  for (int r = 0; r < R; ++r) {
    if ((int)j.at(r).size() != C) throw io_error("ragged matrix rows");
    for (int c = 0; c < C; ++c) {
      const json& e = j.at(r).at(c);
      if (e.is_number()) {
        m(r, c) = Cplx(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Cplx(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        throw io_error("matrix entries must be numbers or [re,im] pairs");
      }
    }
  }
  return m;
}

// ---- representation points ------------------------------------------------

inline ordered_json rep_to_json(const RepPoint& rep) {
  const Quiver& q = *rep.q;
  ordered_json j;
  j["schema"] = "ncpot/1";
  j["dims"] = ordered_json::object();
  for (int v = 0; v < q.nverts(); ++v) j["dims"][q.verts[v]] = rep.dims[v];
  j["matrices"] = ordered_json::object();
  for (int e = 0; e < q.nedges(); ++e)
    j["matrices"][q.edges[e].name] = mat_to_json(rep.mats[e]);
  return j;
}

inline RepPoint rep_from_json(const Quiver& q, const json& j) {
  if (!j.contains("dims") || !j.contains("matrices"))
    throw io_error("rep file needs \"dims\" and \"matrices\"");
  std::vector<int> dims(q.nverts(), 0);
  for (auto& [name, d] : j.at("dims").items()) {
    int v;
    try {
      v = q.vertex_index(name);
    } catch (const std::runtime_error& e) {
      throw io_error(e.what());
    }
    dims[v] = d.get<int>();
    if (dims[v] <= 0) throw io_error("vertex " + name + ": dimension must be positive");
  }
  for (int v = 0; v < q.nverts(); ++v)
    if (dims[v] == 0) throw io_error("missing dimension for vertex " + q.verts[v]);
  RepPoint rep(q, dims);
  for (auto& [name, mj] : j.at("matrices").items()) {
    int e;
    try {
      e = q.edge_index(name);
    } catch (const std::runtime_error& ex) {
      throw io_error(ex.what());
    }
    rep.mats[e] = mat_from_json(mj, dims[q.edges[e].src], dims[q.edges[e].tgt]);
  }
  return rep;
}

// ---- group files ----------------------------------------------------------

inline ordered_json group_to_json(const GroupData& G) {
  ordered_json j;
  j["schema"] = "ncpot/1";
  if (G.abelian) {
    j["type"] = "abelian";
    j["order"] = G.order;
    j["generators"] = ordered_json::array();
    for (auto& g : G.generators) j["generators"].push_back({g[0], g[1], g[2]});
  } else {
    j["type"] = "explicit";
    j["elements"] = ordered_json::array();
    for (auto& m : G.elements) j["elements"].push_back(mat_to_json(m));
    j["irreps"] = ordered_json::array();
    for (auto& R : G.irreps) {
      ordered_json rj;
      rj["label"] = R.label;
      rj["dim"] = R.dim;
      rj["mats"] = ordered_json::array();
      for (auto& m : R.mats) rj["mats"].push_back(mat_to_json(m));
      j["irreps"].push_back(rj);
    }
  }
  return j;
}

inline GroupData group_from_json(const json& j) {
  std::string type = j.value("type", "");
  GroupData G;
  if (type == "abelian") {
    G.abelian = true;
    G.order = j.at("order").get<int>();
    for (auto& gj : j.at("generators")) {
      if (!gj.is_array() || gj.size() != 3)
        throw io_error("abelian generators are triples of exponents");
      G.generators.push_back({gj.at(0).get<int>(), gj.at(1).get<int>(),
                              gj.at(2).get<int>()});
    }
  } else if (type == "explicit") {
    G.abelian = false;
    for (auto& mj : j.at("elements")) G.elements.push_back(mat_from_json(mj, 3, 3));
    for (auto& rj : j.at("irreps")) {
      ExplicitIrrep R;
      R.label = rj.at("label").get<std::string>();
      R.dim = rj.at("dim").get<int>();
      if (R.dim <= 0) throw io_error("irrep " + R.label + ": dim must be positive");
      for (auto& mj : rj.at("mats"))
        R.mats.push_back(mat_from_json(mj, R.dim, R.dim));
      G.irreps.push_back(std::move(R));
    }
  } else {
    throw io_error("group \"type\" must be \"abelian\" or \"explicit\"");
  }
  return G;
}

inline GroupData load_group(const std::string& path) {
  return group_from_json(load_json(path));
}

}  // namespace ncpot
