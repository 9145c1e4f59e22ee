// Batch front end: JSON in, one JSON report out, library does the math.
//
// Exit codes: 0 ok, 1 negative result, 2 input error, 3 unsupported
// signature, 4 search bound exhausted.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "k3lat/json_io.hpp"
#include "k3lat/koszul.hpp"

namespace {

using k3lat::Json;

enum class Status { ok = 0, negative = 1, input_error = 2, unsupported = 3, bound_exhausted = 4 };

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::negative: return "negative";
    case Status::input_error: return "input-error";
    case Status::unsupported: return "unsupported";
    case Status::bound_exhausted: return "bound-exhausted";
  }
  return "input-error";
}

struct Report {
  Status status = Status::ok;
  Json payload = Json::object();
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw k3lat::InputError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw k3lat::InputError("malformed JSON in " + path + ": " + e.what());
  }
}

k3lat::DecisionMode parse_mode(const std::string& mode) {
  if (mode == "any") return k3lat::DecisionMode::any;
  if (mode == "oriented") return k3lat::DecisionMode::oriented;
  throw k3lat::InputError("unknown mode: " + mode);
}

Json failure_json(const k3lat::KoszulFailure& f) {
  return Json{{"position", f.position},
              {"degree", f.degree},
              {"kernel_dim", f.kernel_dim},
              {"image_dim", f.image_dim}};
}

int emit(const Report& rep) {
  Json out = Json::object();
  out["schema"] = "1";
  out["status"] = status_name(rep.status);
  for (const auto& [k, v] : rep.payload.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
  return static_cast<int>(rep.status);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace k3lat;

  CLI::App app{"Exact lattice toolkit for K3 derived equivalence and "
               "n-Koszulity"};
  app.require_subcommand(1);

  std::string s1_path, s2_path, surface_path, v_path, u_path, matrix_path,
      algebra_path;
  std::string mode = "any";
  unsigned depth = 0, koszul_n = 0, max_degree = 0;
  bool witness = false, raw_quotient = false;

  auto add_surfaces = [&](CLI::App* c) {
    c->add_option("--s1", s1_path, "first surface JSON")->required();
    c->add_option("--s2", s2_path, "second surface JSON")->required();
  };

  CLI::App* snf_cmd = app.add_subcommand("snf", "Smith normal form");
  snf_cmd->add_option("--matrix", matrix_path, "integer matrix JSON")
      ->required();

  CLI::App* pair_cmd = app.add_subcommand("pair", "lattice pairing value");
  pair_cmd->add_option("--matrix", matrix_path, "Gram matrix JSON")->required();
  pair_cmd->add_option("--v", v_path, "first vector JSON")->required();
  pair_cmd->add_option("--u", u_path, "second vector JSON")->required();

  CLI::App* mv_cmd = app.add_subcommand("mukai-vector", "vector of a sheaf");
  mv_cmd->add_option("--surface", surface_path, "surface JSON")->required();
  mv_cmd->add_option("--v", v_path, "sheaf data JSON {r, c1, c2}")->required();

  CLI::App* euler_cmd = app.add_subcommand("euler", "Euler pairing");
  euler_cmd->add_option("--surface", surface_path, "surface JSON")->required();
  euler_cmd->add_option("--v", v_path, "first Mukai vector JSON")->required();
  euler_cmd->add_option("--u", u_path, "second Mukai vector JSON")->required();

  CLI::App* iso_cmd =
      app.add_subcommand("isometries", "transcendental-lattice isometries");
  add_surfaces(iso_cmd);
  iso_cmd->add_option("--mode", mode, "any | oriented");

  CLI::App* deq_cmd =
      app.add_subcommand("dequiv", "derived-equivalence decision");
  add_surfaces(deq_cmd);
  deq_cmd->add_option("--mode", mode, "any | oriented");
  deq_cmd->add_flag("--witness", witness, "emit the witness matrix");

  CLI::App* partner_cmd =
      app.add_subcommand("partner", "moduli partner NS lattice");
  partner_cmd->add_option("--surface", surface_path, "surface JSON")
      ->required();
  partner_cmd->add_option("--v", v_path, "Mukai vector JSON")->required();
  partner_cmd->add_flag("--raw-quotient", raw_quotient,
                        "emit the un-negated quotient Gram");

  CLI::App* norm_cmd = app.add_subcommand("normalize", "move to rank > 1");
  norm_cmd->add_option("--surface", surface_path, "surface JSON")->required();
  norm_cmd->add_option("--v", v_path, "Mukai vector JSON")->required();

  CLI::App* comp_cmd = app.add_subcommand("companion", "vector with (v,u)=1");
  comp_cmd->add_option("--surface", surface_path, "surface JSON")->required();
  comp_cmd->add_option("--v", v_path, "Mukai vector JSON")->required();

  CLI::App* ext_cmd =
      app.add_subcommand("extend", "extend a T-isometry to the Mukai lattice");
  add_surfaces(ext_cmd);
  ext_cmd->add_option("--matrix", matrix_path, "T1 -> T2 isometry matrix JSON")
      ->required();
  ext_cmd->add_option("--depth", depth, "word-search depth");

  CLI::App* tr_cmd =
      app.add_subcommand("transform", "cohomological Fourier-Mukai action");
  add_surfaces(tr_cmd);
  tr_cmd->add_option("--matrix", matrix_path, "Kunneth class JSON")->required();
  tr_cmd->add_option("--v", v_path, "Mukai vector JSON")->required();

  CLI::App* kos_cmd = app.add_subcommand("koszul", "n-Koszulity check");
  kos_cmd->add_option("--algebra", algebra_path, "graded algebra JSON")
      ->required();
  kos_cmd->add_option("--n", koszul_n, "complex length n")->required();
  kos_cmd->add_option("--max-degree", max_degree, "internal degree bound")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::input_error, Json{{"error", e.what()}}});
  }

  Report rep;
  try {
    if (snf_cmd->parsed()) {
      IntMat m = intmat_from_json(load_json(matrix_path));
      SnfResult s = snf(m);
      rep.payload = Json{
          {"d", to_json(s.d)}, {"u", to_json(s.u)}, {"v", to_json(s.v)}};
    } else if (pair_cmd->parsed()) {
      Lattice l(intmat_from_json(load_json(matrix_path)));
      IntVec x = intvec_from_json(load_json(v_path));
      IntVec y = intvec_from_json(load_json(u_path));
      rep.payload = Json{{"value", to_string(pair(l, x, y))}};
    } else if (mv_cmd->parsed()) {
      K3SurfaceData s = surface_from_json(load_json(surface_path));
      SheafData d = sheaf_from_json(load_json(v_path));
      rep.payload = Json{{"vector", to_json(mukai_vector(d, s.model()))}};
    } else if (euler_cmd->parsed()) {
      K3SurfaceData s = surface_from_json(load_json(surface_path));
      SurfaceModel m = s.model();
      auto fill = [&](MukaiVector v) {
        if (v.t.empty()) v.t = IntVec(m.tau());
        return v;
      };
      MukaiVector v = fill(mukai_vector_from_json(load_json(v_path)));
      MukaiVector u = fill(mukai_vector_from_json(load_json(u_path)));
      rep.payload = Json{{"value", to_string(euler_characteristic(v, u, m))}};
    } else if (iso_cmd->parsed()) {
      K3SurfaceData s1 = surface_from_json(load_json(s1_path));
      K3SurfaceData s2 = surface_from_json(load_json(s2_path));
      auto isos = hodge_isometries(s1, s2, parse_mode(mode));
      Json list = Json::array();
      for (const auto& w : isos)
        list.push_back(
            Json{{"matrix", to_json(w.iso.matrix)}, {"oriented", w.oriented}});
      rep.payload =
          Json{{"mode", mode}, {"count", isos.size()}, {"isometries", list}};
      if (isos.empty()) rep.status = Status::negative;
    } else if (deq_cmd->parsed()) {
      K3SurfaceData s1 = surface_from_json(load_json(s1_path));
      K3SurfaceData s2 = surface_from_json(load_json(s2_path));
      EquivalenceDecision d = derived_equivalent(s1, s2, parse_mode(mode));
      rep.payload = Json{{"equivalent", d.equivalent},
                         {"mode", to_string(d.mode)},
                         {"witness", Json(nullptr)}};
      if (witness && d.witness)
        rep.payload["witness"] =
            Json{{"matrix", to_json(d.witness->iso.matrix)},
                 {"oriented", d.witness->oriented}};
      if (!d.equivalent) rep.status = Status::negative;
    } else if (partner_cmd->parsed()) {
      K3SurfaceData s = surface_from_json(load_json(surface_path));
      SurfaceModel m = s.model();
      MukaiVector v = mukai_vector_from_json(load_json(v_path));
      if (v.t.empty()) v.t = IntVec(m.tau());
      PartnerData p = moduli_partner(m, v);
      rep.payload = Json{{"ns_gram", to_json(p.ns_gram)},
                         {"t_carryover", to_json(p.t_carryover)},
                         {"fine", p.fine},
                         {"identity_partner", p.identity_partner}};
      if (raw_quotient) rep.payload["raw_quotient"] = to_json(p.raw_quotient);
    } else if (norm_cmd->parsed()) {
      K3SurfaceData s = surface_from_json(load_json(surface_path));
      SurfaceModel m = s.model();
      MukaiVector v = mukai_vector_from_json(load_json(v_path));
      if (v.t.empty()) v.t = IntVec(m.tau());
      NormalizeResult n = normalize_rank(v, m);
      rep.payload = Json{{"vector", to_json(n.v)},
                         {"matrix", to_json(n.g.matrix)},
                         {"r1_warning", n.r1_warning}};
    } else if (comp_cmd->parsed()) {
      K3SurfaceData s = surface_from_json(load_json(surface_path));
      SurfaceModel m = s.model();
      MukaiVector v = mukai_vector_from_json(load_json(v_path));
      if (v.t.empty()) v.t = IntVec(m.tau());
      rep.payload = Json{{"vector", to_json(companion(v, m))}};
    } else if (ext_cmd->parsed()) {
      K3SurfaceData s1 = surface_from_json(load_json(s1_path));
      K3SurfaceData s2 = surface_from_json(load_json(s2_path));
      if (!s1.t_gram || !s2.t_gram)
        throw InputError("extend: both surfaces need t_gram");
      Isometry g{*s1.t_gram, *s2.t_gram,
                 intmat_from_json(load_json(matrix_path))};
      if (!g.valid())
        throw InputError("extend: matrix is not an isometry T1 -> T2");
      Isometry h = search_extension(g, s1, s2, depth);
      Isometry full = assemble_mukai_isometry(g, h, s1, s2);
      rep.payload = Json{{"h_matrix", to_json(h.matrix)},
                         {"assembled_matrix", to_json(full.matrix)},
                         {"assembled_gram", to_json(full.target_gram)}};
    } else if (tr_cmd->parsed()) {
      K3SurfaceData s1 = surface_from_json(load_json(s1_path));
      K3SurfaceData s2 = surface_from_json(load_json(s2_path));
      SurfaceModel m1 = s1.model(), m2 = s2.model();
      KunnethClass z = kunneth_from_json(load_json(matrix_path));
      MukaiVector v = mukai_vector_from_json(load_json(v_path));
      if (v.t.empty()) v.t = IntVec(m1.tau());
      RatVec out = cohomological_transform_rational(z, v, m1, m2);
      bool integral = true;
      for (const auto& x : out) integral = integral && x.get_den() == 1;
      Json coords = Json::array();
      for (const auto& x : out) coords.push_back(to_string(x));
      rep.payload = Json{{"coords", coords}, {"integral", integral}};
      if (integral)
        rep.payload["vector"] =
            to_json(cohomological_transform(z, v, m1, m2));
    } else if (kos_cmd->parsed()) {
      GradedAlgebra a = algebra_from_json(load_json(algebra_path));
      std::vector<std::string> bad = validate_algebra(a);
      if (!bad.empty())
        throw InputError("invalid algebra: " + bad.front());
      KoszulReport r = is_n_koszul(a, koszul_n, max_degree);
      KoszulData kd = b_modules(a, koszul_n);
      Json bdims = Json::array();
      for (auto b : kd.b_dims) bdims.push_back(b);
      rep.payload = Json{{"koszul", r.koszul},
                         {"n", r.n},
                         {"max_internal_degree", r.max_internal_degree},
                         {"b_dims", bdims},
                         {"first_failure", Json(nullptr)}};
      if (r.first_failure)
        rep.payload["first_failure"] = failure_json(*r.first_failure);
      if (!r.koszul) rep.status = Status::negative;
    }
  } catch (const UnnormalizableError& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::negative, Json{{"error", e.what()}}});
  } catch (const DivisibilityError& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::negative,
                 Json{{"error", e.what()},
                      {"divisibility", to_string(e.divisibility)}}});
  } catch (const BoundExhausted& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::bound_exhausted, Json{{"error", e.what()}}});
  } catch (const UnsupportedSignature& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::unsupported, Json{{"error", e.what()}}});
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::input_error, Json{{"error", e.what()}}});
  } catch (const Json::exception& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::input_error, Json{{"error", e.what()}}});
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return emit({Status::input_error, Json{{"error", e.what()}}});
  }
  return emit(rep);
}
