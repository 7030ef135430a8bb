// Regenerates the bundled JSON example files.  Usage: gen_examples [outdir]

#include <iostream>

#include "ncpot/io.hpp"

using namespace ncpot;
using namespace ncpot::builtins;

static GroupData s3_group() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<int> sgn = {1, -1, -1, -1, 1, 1};
  // standard representation in the integral basis (1,-1,0), (0,1,-1)
  std::vector<std::array<double, 4>> stdm = {{1, 0, 0, 1},  {-1, 1, 0, 1},
                                             {0, -1, -1, 0}, {1, 0, 1, -1},
                                             {0, -1, 1, -1}, {-1, 1, -1, 0}};
  GroupData G;
  G.abelian = false;
  for (size_t g = 0; g < perms.size(); ++g) {
    Mat m = Mat::Zero(3, 3);
    for (int c = 0; c < 3; ++c) m(perms[g][c], c) = (double)sgn[g];
    G.elements.push_back(m);
  }
  ExplicitIrrep triv{"triv", 1, {}}, sg{"sgn", 1, {}}, st{"std", 2, {}};
  for (size_t g = 0; g < perms.size(); ++g) {
    triv.mats.push_back(Mat::Constant(1, 1, 1.0));
    sg.mats.push_back(Mat::Constant(1, 1, (double)sgn[g]));
    Mat m(2, 2);
    m << stdm[g][0], stdm[g][1], stdm[g][2], stdm[g][3];
    st.mats.push_back(m);
  }
  G.irreps = {triv, sg, st};
  return G;
}

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "examples";
  auto put = [&](const std::string& name, const ordered_json& j) {
    save_json(dir + "/" + name, j);
    std::cout << dir << "/" << name << "\n";
  };

  {
    Quiver q = free3();
    put("basic.json", potential_to_json(q, basic_potential(q)));
    put("x3.json", potential_to_json(q, x3_potential(q)));
    put("sklyanin_quadratic.json", potential_to_json(q, sklyanin_quadratic(q)));
    put("yangmills.json", potential_to_json(q, yang_mills_potential(q)));

    // phi1 = xyz - yxz + 1/2 (x^2 + y^2 + z^2)
    CyclicPoly phi1 = basic_potential(q) +
                      cyclic_word(q, {"x", "x"}, Scalar(Rat(1, 2))) +
                      cyclic_word(q, {"y", "y"}, Scalar(Rat(1, 2))) +
                      cyclic_word(q, {"z", "z"}, Scalar(Rat(1, 2)));
    put("phi1.json", potential_to_json(q, phi1));

    // exact 1-form input for `integrate`: the derivatives of the basic potential
    ordered_json forms;
    forms["schema"] = "ncpot/1";
    forms["quiver"] = quiver_to_json(q);
    forms["forms"] = ordered_json::object();
    for (auto& e : q.edges)
      forms["forms"][e.name] =
          ncpoly_to_json(cyclic_derive(basic_potential(q), e.name));
    put("integrate_basic.json", forms);

    // commuting diagonal triple (critical point of the basic potential)
    RepPoint rho(q, {3});
    Mat d1(3, 3), d2(3, 3), d3(3, 3);
    d1 << 1, 0, 0, 0, 2, 0, 0, 0, 3;
    d2 << -1, 0, 0, 0, 0.5, 0, 0, 0, 2;
    d3 << 0.25, 0, 0, 0, -1, 0, 0, 0, 1;
    rho.set("x", d1);
    rho.set("y", d2);
    rho.set("z", d3);
    put("rep_commuting.json", rep_to_json(rho));

    // sl2 critical point of phi1: x,y,z -> (i/2) sigma_1,2,3
    RepPoint sl2(q, {2});
    const Cplx I(0.0, 1.0);
    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    sl2.set("x", (I / 2.0) * s1);
    sl2.set("y", (I / 2.0) * s2);
    sl2.set("z", (I / 2.0) * s3);
    put("rep_sl2.json", rep_to_json(sl2));
  }
  {
    Quiver q = cubic_quiver();
    put("sklyanin_cubic.json", potential_to_json(q, sklyanin_cubic(q)));
  }
  {
    Quiver q = conifold();
    put("conifold.json", potential_to_json(q, conifold_potential(q)));
  }
  for (int k : {3, 4}) {
    Quiver q = cyclic_quiver(k);
    put("cyclic" + std::to_string(k) + ".json",
        potential_to_json(q, cycle_potential(q)));
  }

  put("group_trivial.json", group_to_json(GroupData::trivial()));
  put("group_z3_111.json", group_to_json(GroupData::abelian_group(3, {{1, 1, 1}})));
  put("group_z3_120.json", group_to_json(GroupData::abelian_group(3, {{1, 2, 0}})));
  put("group_z7_124.json", group_to_json(GroupData::abelian_group(7, {{1, 2, 4}})));
  put("group_z3xz3.json",
      group_to_json(GroupData::abelian_group(3, {{1, 2, 0}, {0, 1, 2}})));
  put("group_s3.json", group_to_json(s3_group()));
  return 0;
}
