// ncpot: exact-arithmetic toolkit for quivers with potentials.
//
// Verbs: derive, hessian, integrate, dg-check, hilbert, cy-check, zeta,
//        mckay, rep-check.
// Exit codes: 0 success / all checks pass, 1 mathematical failure,
//             2 malformed input.

#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "ncpot/io.hpp"
#include "ncpot/super.hpp"

using namespace ncpot;

namespace {

constexpr const char* kSchema = "ncpot/1";

uint64_t pick_seed(uint64_t cli_seed) {
  if (const char* s = std::getenv("NCPOT_SEED"))
    return std::strtoull(s, nullptr, 10);
  return cli_seed;
}

int potential_degree(const Quiver& q, const CyclicPoly& phi) {
  if (phi.is_zero()) throw io_error("potential is zero");
  int m = -1;
  for (auto& [p, c] : phi.terms) {
    int d = path_degree(q, p);
    if (m >= 0 && d != m) throw io_error("potential is not homogeneous");
    m = d;
  }
  return m;
}

std::string series_row(const RatSeries& s) {
  std::string out;
  for (size_t i = 0; i < s.c.size(); ++i) {
    if (i) out += " ";
    out += s.c[i].get_str();
  }
  return out;
}

ordered_json series_json(const RatSeries& s) {
  ordered_json arr = ordered_json::array();
  for (auto& c : s.c) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p())
      arr.push_back(c.get_num().get_si());
    else
      arr.push_back(c.get_str());
  }
  return arr;
}

void emit(bool as_json, const ordered_json& doc, const std::string& text) {
  if (as_json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

// ---- derive ---------------------------------------------------------------

int cmd_derive(const std::string& pot_path, const std::string& var, bool js) {
  PotentialFile f = load_potential(pot_path);
  const Quiver& q = *f.quiver;
  std::vector<int> vars;
  if (!var.empty()) {
    if (!q.has_edge(var)) throw io_error("unknown edge " + var);
    vars.push_back(q.edge_index(var));
  } else {
    for (int e = 0; e < q.nedges(); ++e) vars.push_back(e);
  }
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["derivatives"] = ordered_json::object();
  std::string text;
  for (int e : vars) {
    NCPoly d = cyclic_derive(f.potential, e);
    doc["derivatives"][q.edges[e].name] = ncpoly_to_json(d);
    text += "d/d" + q.edges[e].name + ": " + d.str() + "\n";
  }
  emit(js, doc, text);
  return 0;
}

// ---- hessian --------------------------------------------------------------

ordered_json tensor_to_json(const TensorPoly& t) {
  ordered_json terms = ordered_json::array();
  for (auto& [key, c] : t.terms) {
    ordered_json item;
    item["coeff"] = rat_to_json(scalar_rat(c));
    ordered_json factors = ordered_json::array();
    for (auto& p : key) {
      ordered_json word = ordered_json::array();
      for (int e : p.es) word.push_back(t.q->edges[e].name);
      factors.push_back(word);
    }
    item["factors"] = factors;
    terms.push_back(item);
  }
  return terms;
}

int cmd_hessian(const std::string& pot_path, bool js) {
  PotentialFile f = load_potential(pot_path);
  const Quiver& q = *f.quiver;
  auto H = hessian(f.potential);
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["hessian"] = ordered_json::array();
  std::string text;
  for (int i = 0; i < q.nedges(); ++i)
    for (int j = 0; j < q.nedges(); ++j) {
      if (H[i][j].is_zero()) continue;
      ordered_json ent;
      ent["row"] = q.edges[i].name;
      ent["col"] = q.edges[j].name;
      ent["terms"] = tensor_to_json(H[i][j]);
      doc["hessian"].push_back(ent);
      text += "H[" + q.edges[i].name + "][" + q.edges[j].name + "]: " +
              H[i][j].str() + "\n";
    }
  emit(js, doc, text);
  return 0;
}

// ---- integrate ------------------------------------------------------------

int cmd_integrate(const std::string& forms_path, bool js) {
  json j = load_json(forms_path);
  if (!j.contains("quiver") || !j.contains("forms"))
    throw io_error("integrate input needs \"quiver\" and \"forms\"");
  auto qp = std::make_shared<Quiver>(quiver_from_json(j.at("quiver")));
  const Quiver& q = *qp;
  std::vector<NCPoly> fs(q.nedges(), NCPoly(q));
  for (auto& [name, terms] : j.at("forms").items()) {
    if (!q.has_edge(name)) throw io_error("unknown edge " + name);
    fs[q.edge_index(name)] = ncpoly_from_json(q, terms);
  }
  auto phi = poincare_integrate(q, fs);
  if (!phi) {
    std::cout << "FAIL: the 1-form is not exact (re-derivation mismatch)\n";
    return 1;
  }
  ordered_json doc = potential_to_json(q, *phi);
  emit(js, doc, "Phi: " + phi->str() + "\n");
  return 0;
}

// ---- dg-check -------------------------------------------------------------

Path random_cycle_hat(const SuperQuiver& sq, std::mt19937_64& rng, int maxlen,
                      bool notau) {
  const Quiver& q = sq.hat;
  int lim = notau ? 2 * sq.nx() + sq.nv() : q.nedges();
  for (;;) {
    int L = 1 + (int)(rng() % maxlen);
    Path p;
    p.es.push_back((int)(rng() % lim));
    p.vtx = q.edges[p.es[0]].src;
    bool ok = true;
    for (int k = 1; k < L; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < lim; ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) { ok = false; break; }
      p.es.push_back(opts[rng() % opts.size()]);
    }
    if (ok && path_closed(q, p)) return p;
  }
}

NCPoly random_nc_hat(const SuperQuiver& sq, std::mt19937_64& rng, int maxterms,
                     int maxlen) {
  const Quiver& q = sq.hat;
  NCPoly out(q);
  std::uniform_int_distribution<int> nt(1, maxterms), coef(-3, 3);
  int T = nt(rng);
  for (int t = 0; t < T; ++t) {
    int L = 1 + (int)(rng() % maxlen);
    Path p;
    p.es.push_back((int)(rng() % q.nedges()));
    p.vtx = q.edges[p.es[0]].src;
    for (int k = 1; k < L; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < q.nedges(); ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) break;
      p.es.push_back(opts[rng() % opts.size()]);
    }
    out.add(p, Scalar(coef(rng)));
  }
  return out;
}

int cmd_dg_check(const std::string& pot_path, int samples, uint64_t seed,
                 bool js) {
  PotentialFile f = load_potential(pot_path);
  SuperQuiver sq(*f.quiver);
  std::mt19937_64 rng(seed);

  bool d2 = true, master = true, unit = true, bv2 = true;
  std::string d2_bad, ax_bad, bv_bad;

  SDerivation d = dg_differential(sq, f.potential);
  for (int e = 0; e < sq.hat.nedges() && d2; ++e) {
    NCPoly g = NCPoly::gen(sq.hat, e);
    if (!d(d(g)).is_zero()) {
      d2 = false;
      d2_bad = "generator " + sq.hat.edges[e].name;
    }
  }
  for (int it = 0; it < samples && d2; ++it) {
    NCPoly a = random_nc_hat(sq, rng, 3, 6);
    if (!d(d(a)).is_zero()) {
      d2 = false;
      d2_bad = "random element " + a.str();
    }
  }

  try {
    brst_potential(sq, f.potential);
  } catch (const std::runtime_error& e) {
    ax_bad = e.what();
    if (ax_bad.find("unit") != std::string::npos) unit = false;
    else master = false;
  }

  for (int it = 0; it < samples && bv2; ++it) {
    SymPoly u(sq);
    int nf = 1 + (int)(rng() % 2);
    std::vector<Path> fac;
    int deg = 0;
    for (int kk = 0; kk < nf; ++kk) {
      Path p = random_cycle_hat(sq, rng, 4, /*notau=*/true);
      if (deg + (int)p.es.size() > 4) break;
      deg += (int)p.es.size();
      fac.push_back(p);
    }
    if (fac.empty()) continue;
    u.add_product(fac, Scalar(1 + (int)(rng() % 3)));
    if (u.is_zero()) continue;
    if (!bv_operator(sq, bv_operator(sq, u)).is_zero()) {
      bv2 = false;
      bv_bad = u.str();
    }
  }

  auto line = [](const char* name, bool ok, const std::string& why) {
    std::string s = std::string(name) + ": " + (ok ? "PASS" : "FAIL");
    if (!ok && !why.empty()) s += "  (" + why + ")";
    return s + "\n";
  };
  std::string text = line("d^2=0", d2, d2_bad) +
                     line("master {Phi-flat,Phi-flat}=0", master, ax_bad) +
                     line("unit xi_t(Phi-flat)=delta", unit, ax_bad) +
                     line("Delta^2=0", bv2, bv_bad);
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["d_squared"] = d2;
  doc["master"] = master;
  doc["unit"] = unit;
  doc["bv_squared"] = bv2;
  emit(js, doc, text);
  return (d2 && master && unit && bv2) ? 0 : 1;
}

// ---- hilbert --------------------------------------------------------------

void series_block(ordered_json& doc, std::string key, const Quiver& q,
                  const MatrixSeries& h, std::string& text,
                  const std::string& label) {
  doc[key] = ordered_json::object();
  for (int i = 0; i < q.nverts(); ++i)
    for (int j = 0; j < q.nverts(); ++j) {
      const RatSeries& s = h.at(i, j);
      bool zero = true;
      for (auto& c : s.c) zero = zero && c == 0;
      if (zero && q.nverts() > 1) continue;
      std::string name = q.nverts() == 1
                             ? "h"
                             : "h[" + q.verts[i] + "][" + q.verts[j] + "]";
      doc[key][name] = series_json(s);
      text += label + name + ": " + series_row(s) + "\n";
    }
}

int cmd_hilbert(const std::string& pot_path, int degree, bool oracle,
                bool from_cartan, bool exact, bool js) {
  PotentialFile f = load_potential(pot_path);
  const Quiver& q = *f.quiver;
  if (!oracle && !from_cartan) oracle = true;
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["degree"] = degree;
  std::string text;
  if (oracle) {
    GradedQuotient G(q, f.potential, degree);
    MatrixSeries h = graded_dims(G, degree, exact);
    series_block(doc, "oracle", q, h, text, from_cartan ? "oracle " : "");
  }
  if (from_cartan) {
    int m = potential_degree(q, f.potential);
    MatrixSeries p = cartan_polynomial(q, m, degree);
    series_block(doc, "from_cartan", q, hilbert_from_cartan(p), text,
                 oracle ? "cartan " : "");
  }
  emit(js, doc, text);
  return 0;
}

// ---- cy-check -------------------------------------------------------------

int cmd_cy_check(const std::string& pot_path, int degree, bool exact, bool js) {
  PotentialFile f = load_potential(pot_path);
  GradedQuotient G(*f.quiver, f.potential, degree);
  CheckReport hil = cy_hilbert_check(G, degree, exact);
  CotangentReport cot = cotangent_complex_check(G, degree);
  bool pass = hil.pass && cot.complex_ok && cot.exact_ok && cot.euler_ok;
  std::string text;
  text += std::string("hilbert-identity: ") + (hil.pass ? "PASS" : "FAIL") +
          "  (" + hil.detail + ")\n";
  text += std::string("cotangent-complex: ") +
          (cot.complex_ok && cot.exact_ok && cot.euler_ok ? "PASS" : "FAIL");
  if (!cot.detail.empty()) text += "  (" + cot.detail + ")";
  text += "\n";
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["hilbert_identity"] = hil.pass;
  doc["hilbert_detail"] = hil.detail;
  doc["cotangent_complex"] = cot.complex_ok;
  doc["cotangent_exact"] = cot.exact_ok;
  doc["cotangent_euler"] = cot.euler_ok;
  doc["cotangent_detail"] = cot.detail;
  emit(js, doc, text);
  return pass ? 0 : 1;
}

// ---- zeta -----------------------------------------------------------------

int cmd_zeta(const std::string& pot_path, int degree, int factors, bool js) {
  PotentialFile f = load_potential(pot_path);
  int m = potential_degree(*f.quiver, f.potential);
  RatSeries z = zeta_characteristic(*f.quiver, m, degree, factors);
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["degree"] = degree;
  doc["factors"] = factors;
  doc["zeta"] = series_json(z);
  emit(js, doc, "zeta: " + series_row(z) + "\n");
  return 0;
}

// ---- mckay ----------------------------------------------------------------

int cmd_mckay(const std::string& group_path, int degree,
              const std::string& emit_path, bool exact, bool js) {
  GroupData G = load_group(group_path);
  McKayQuiver Q = build_quiver(G);
  CyclicPoly phi = triangle_coefficients(Q);
  if (!emit_path.empty()) save_json(emit_path, potential_to_json(Q.quiver, phi));
  CheckReport rep = mckay_check(Q, phi, degree, exact, G.elements);

  std::string text;
  text += "group order: " + std::to_string(Q.group_order) + "\n";
  text += "vertices: " + std::to_string(Q.quiver.nverts()) +
          "  edges: " + std::to_string(Q.quiver.nedges()) +
          "  potential terms: " + std::to_string(phi.terms.size()) + "\n";
  text += std::string("mckay-check: ") + (rep.pass ? "PASS" : "FAIL") + "  (" +
          rep.detail + ")\n";
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["group_order"] = Q.group_order;
  doc["vertices"] = Q.quiver.verts;
  doc["edges"] = (int)Q.quiver.nedges();
  doc["potential"] = cyclic_to_json(phi);
  doc["pass"] = rep.pass;
  doc["detail"] = rep.detail;
  emit(js, doc, text);
  return rep.pass ? 0 : 1;
}

// ---- rep-check ------------------------------------------------------------

int cmd_rep_check(const std::string& pot_path, const std::string& rep_path,
                  bool fd, bool star, uint64_t seed, bool js) {
  PotentialFile f = load_potential(pot_path);
  const Quiver& q = *f.quiver;
  RepPoint rho = rep_from_json(q, load_json(rep_path));
  Cplx tr = trace_potential(f.potential, rho);
  double res = critical_residual(f.potential, rho, star);

  bool fd_ok = true;
  double fd_err = 0.0;
  if (fd) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double h = 1e-5;
    std::vector<Mat> grads = trace_gradient(f.potential, rho);
    for (int e = 0; e < q.nedges(); ++e) {
      const Mat& G = grads[e];
      Mat E(rho.dims[q.edges[e].src], rho.dims[q.edges[e].tgt]);
      for (int r = 0; r < E.rows(); ++r)
        for (int c = 0; c < E.cols(); ++c)
          E(r, c) = Cplx(gauss(rng), gauss(rng));
      RepPoint plus = rho, minus = rho;
      plus.mats[e] += h * E;
      minus.mats[e] -= h * E;
      double num = (trace_potential(f.potential, plus).real() -
                    trace_potential(f.potential, minus).real()) /
                   (2 * h);
      double sym = (G * E).trace().real();
      double rel = std::abs(num - sym) / std::max(1.0, std::abs(sym));
      fd_err = std::max(fd_err, rel);
    }
    fd_ok = fd_err <= 1e-6;
  }

  char buf[64];
  std::snprintf(buf, sizeof(buf), "% .12g %+.12gi", tr.real(), tr.imag());
  std::string text = "trace: " + std::string(buf) + "\n";
  std::snprintf(buf, sizeof(buf), "%.12g", res);
  text += std::string(star ? "residual (star): " : "residual: ") + buf + "\n";
  if (fd) {
    std::snprintf(buf, sizeof(buf), "%.3g", fd_err);
    text += std::string("fd-check: ") + (fd_ok ? "PASS" : "FAIL") +
            "  (max relative error " + buf + ")\n";
  }
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["trace"] = {tr.real(), tr.imag()};
  doc["residual"] = res;
  if (fd) {
    doc["fd_pass"] = fd_ok;
    doc["fd_max_rel_error"] = fd_err;
  }
  emit(js, doc, text);
  return fd_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for quivers with potentials"};
  app.require_subcommand(1);
  app.fallthrough();  // global --json/--seed may follow the verb's options

  bool js = false;
  uint64_t seed = 20240817ull;
  app.add_flag("--json", js, "machine-readable JSON output");
  app.add_option("--seed", seed, "random seed (NCPOT_SEED overrides)");

  std::string pot, var, rep, forms, group, emit_path;
  int degree = 6, factors = 6, samples = 100;
  bool oracle = false, from_cartan = false, exact = false, fd = false,
       star = false;

  auto* c_derive = app.add_subcommand("derive", "cyclic derivatives of a potential");
  c_derive->add_option("--potential", pot)->required();
  c_derive->add_option("--var", var, "single edge (default: all)");

  auto* c_hess = app.add_subcommand("hessian", "noncommutative Hessian");
  c_hess->add_option("--potential", pot)->required();

  auto* c_int = app.add_subcommand("integrate", "Poincare-lemma integration of an exact 1-form");
  c_int->add_option("--forms", forms)->required();

  auto* c_dg = app.add_subcommand("dg-check", "DG axioms: d^2, master, unit, Delta^2");
  c_dg->add_option("--potential", pot)->required();
  c_dg->add_option("--samples", samples, "random elements per check");

  auto* c_hil = app.add_subcommand("hilbert", "graded dimensions of the quotient");
  c_hil->add_option("--potential", pot)->required();
  c_hil->add_option("--degree", degree)->required();
  c_hil->add_flag("--oracle", oracle, "brute-force quotient dimensions");
  c_hil->add_flag("--from-cartan", from_cartan, "Cartan-polynomial inverse");
  c_hil->add_flag("--exact", exact, "exact rational ranks");

  auto* c_cy = app.add_subcommand("cy-check", "Hilbert identity + cotangent complex");
  c_cy->add_option("--potential", pot)->required();
  c_cy->add_option("--degree", degree)->required();
  c_cy->add_flag("--exact", exact, "exact rational ranks");

  auto* c_zeta = app.add_subcommand("zeta", "zeta-type Euler product");
  c_zeta->add_option("--potential", pot)->required();
  c_zeta->add_option("--degree", degree)->required();
  c_zeta->add_option("--factors", factors, "number of dilated factors");

  auto* c_mckay = app.add_subcommand("mckay", "McKay quiver with potential from a group");
  c_mckay->add_option("--group", group)->required();
  c_mckay->add_option("--degree", degree)->required();
  c_mckay->add_option("--emit-potential", emit_path, "write the potential file");
  c_mckay->add_flag("--exact", exact, "exact rational ranks");

  auto* c_rep = app.add_subcommand("rep-check", "trace potential at a representation point");
  c_rep->add_option("--potential", pot)->required();
  c_rep->add_option("--rep", rep)->required();
  c_rep->add_flag("--fd-check", fd, "finite-difference gradient check");
  c_rep->add_flag("--star", star, "project the gradient to skew-hermitian");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    seed = pick_seed(seed);
    if (*c_derive) return cmd_derive(pot, var, js);
    if (*c_hess) return cmd_hessian(pot, js);
    if (*c_int) return cmd_integrate(forms, js);
    if (*c_dg) return cmd_dg_check(pot, samples, seed, js);
    if (*c_hil) return cmd_hilbert(pot, degree, oracle, from_cartan, exact, js);
    if (*c_cy) return cmd_cy_check(pot, degree, exact, js);
    if (*c_zeta) return cmd_zeta(pot, degree, factors, js);
    if (*c_mckay) return cmd_mckay(group, degree, emit_path, exact, js);
    if (*c_rep) return cmd_rep_check(pot, rep, fd, star, seed, js);
  } catch (const io_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
