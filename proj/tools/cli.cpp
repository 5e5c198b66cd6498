#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdlc/complex.hpp"
#include "tdlc/error.hpp"
#include "tdlc/germ.hpp"
#include "tdlc/homology.hpp"
#include "tdlc/inference.hpp"
#include "tdlc/io.hpp"
#include "tdlc/orbit.hpp"
#include "tdlc/perm.hpp"
#include "tdlc/scan.hpp"

namespace tdlc::cli {

namespace {

using nlohmann::json;

Caps parse_caps(const std::string& text) {
  Caps caps;
  if (text.empty()) return caps;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("cli", "bad --caps entry '" + item + "' (expected key=N)");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw InputError("cli", "bad --caps value '" + value + "'");
    }
    if (key == "vertices") caps.vertices = n;
    else if (key == "simplices") caps.simplices = n;
    else if (key == "group_order") caps.group_order = n;
    else throw InputError("cli", "unknown cap '" + key + "'");
  }
  return caps;
}

linalg::Ring parse_ring(const std::string& s) {
  if (s == "z" || s == "Z") return linalg::Ring::Z;
  if (s == "q" || s == "Q") return linalg::Ring::Q;
  throw InputError("cli", "unknown ring '" + s + "' (expected z or q)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cli", "cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("cli", "cannot write '" + path + "'");
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

json parse_json(const std::string& text, const char* module) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(module, std::string("invalid JSON: ") + e.what());
  }
}

// ---- perm ----

group::Permutation permutation(const json& j, std::size_t degree) {
  group::Permutation p;
  try {
    for (const auto& x : j) p.push_back(x.get<std::uint32_t>());
  } catch (const json::exception&) {
    throw InputError("perm", "permutations are arrays of point indices");
  }
  if (p.size() != degree) throw InputError("perm", "permutation has wrong degree");
  return p;
}

std::string field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw InputError("perm", std::string("missing subgroup name field '") + key + "'");
  return j[key].get<std::string>();
}

std::size_t element(const perm::PermGroup& g, const json& j, const char* key) {
  if (!j.contains(key)) return perm::PermGroup::identity();
  auto idx = g.index_of(permutation(j[key], g.degree()));
  if (!idx) throw InputError("perm", std::string("'") + key + "' is not an element of G");
  return *idx;
}

perm::Representation module(const perm::CosetSystem& sys, const json& j) {
  const auto& g = sys.group();
  if (!j.contains("module")) return perm::Representation::trivial(g);
  const json& m = j["module"];
  if (m.is_string()) {
    const std::string s = m.get<std::string>();
    if (s == "trivial") return perm::Representation::trivial(g);
    if (s == "regular") return perm::Representation::regular(g);
    if (s == "standard") return perm::Representation::standard(g);
    throw InputError("perm", "unknown module '" + s + "'");
  }
  if (m.is_object() && m.contains("cosets"))
    return perm::Representation::cosets(g, sys.subgroup(m["cosets"].get<std::string>()));
  return perm::Representation::from_json(g, m.dump());
}

linalg::Rational rational(const json& j) {
  linalg::Rational q;
  if (j.is_number_integer()) return linalg::Rational(j.get<long>());
  if (j.is_string() && q.set_str(j.get<std::string>(), 10) == 0) {
    q.canonicalize();
    return q;
  }
  throw InputError("perm", "vector entries are integers or \"p/q\" strings");
}

std::string vector_text(const std::vector<linalg::Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void perm_command(const std::string& cmd, const std::string& path, const Caps& caps, std::ostream& out) {
  const std::string text = io::read_text_file(path, "perm");
  const auto sys = perm::CosetSystem::from_json(text, caps);
  const json j = parse_json(text, "perm");
  const auto& g = sys.group();
  if (cmd == "transfer") {
    const auto& u = sys.subgroup(field(j, "U"));
    const auto& v = sys.subgroup(field(j, "V"));
    const std::size_t x = element(g, j, "x");
    const auto image = perm::transfer(g, v, perm::coset(g, u, x));
    out << "eta_{" << field(j, "U") << "," << field(j, "V") << "}(" << group::to_string(g.element(x)) << "U) = "
        << perm::to_string(g, image) << '\n';
  } else if (cmd == "theta") {
    const auto& u = sys.subgroup(field(j, "U"));
    const auto a = module(sys, j);
    std::vector<linalg::Rational> vec(a.dim(), linalg::Rational(0));
    if (j.contains("vector")) {
      if (j["vector"].size() != a.dim()) throw InputError("perm", "vector has wrong dimension");
      for (std::size_t i = 0; i < a.dim(); ++i) vec[i] = rational(j["vector"][i]);
    } else if (a.dim() > 0) {
      vec[0] = 1;
    }
    const std::size_t x = element(g, j, "g");
    const auto least = perm::theta(g, u, x, a, vec, perm::RepresentativeChoice::Least);
    const auto greatest = perm::theta(g, u, x, a, vec, perm::RepresentativeChoice::Greatest);
    out << "theta = " << vector_text(least) << '\n';
    out << "representative independence: " << yes(least == greatest) << '\n';
    const auto phi = perm::invariants_vs_coinvariants(g, u, a);
    out << "phi: dim A^U = " << phi.invariants_dim() << ", dim A_U = " << phi.coinvariants_dim()
        << ", isomorphism: " << yes(phi.isomorphism) << '\n';
  } else if (cmd == "mackey") {
    const auto& u = sys.subgroup(field(j, "U"));
    const auto& v = sys.subgroup(field(j, "V"));
    std::size_t total = 0;
    for (const auto& f : perm::mackey_restrict(g, u, v)) {
      out << "double coset of " << group::to_string(g.element(f.representative)) << ": |stabilizer| = "
          << f.stabilizer.order() << ", index = " << f.index << '\n';
      total += f.index;
    }
    out << "sum of indices = " << total << ", |G:V| = " << g.order() / v.order() << '\n';
  } else if (cmd == "coinvariants") {
    const auto& n = sys.subgroup(field(j, "N"));
    const auto& u = sys.subgroup(field(j, "U"));
    const auto c = perm::coinvariants_bi(g, n, u);
    out << "|G/N| = " << c.quotient.order() << ", |UN/N| = " << c.image.order() << '\n';
    out << "dimension = " << c.dimension << '\n';
  } else if (cmd == "summand") {
    const auto& h = sys.subgroup(field(j, "H"));
    const auto& u = sys.subgroup(field(j, "U"));
    const auto s = perm::open_summand_check(g, h, u);
    out << "|G:U| = " << s.inclusion.rows() << ", |H:U| = " << s.inclusion.cols() << '\n';
    out << "retraction: " << yes(s.retraction) << '\n';
    out << "equivariant: " << yes(s.equivariant) << '\n';
  } else if (cmd == "bar-homology") {
    const std::size_t k = j.value("k", std::size_t{2});
    std::string line;
    for (std::size_t p = 0; p <= k; ++p) {
      homology::HomologyGroup h{perm::bar_homology_q(g, p), {}};
      line += (p ? ", " : "") + std::string("H") + std::to_string(p) + "=" +
              homology::format_group(h, linalg::Ring::Q);
    }
    out << line << '\n';
  } else {
    throw InputError("perm", "unknown perm command '" + cmd + "'");
  }
}

// ---- the rest ----

std::string f_vector(const complex::SimplicialComplex& k) {
  std::vector<std::size_t> f;
  for (int p = 0; p <= k.dim(); ++p) f.push_back(k.count(static_cast<std::size_t>(p)));
  return "[" + join(f) + "]";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finiteness-property toolkit for t.d.l.c. groups", "tdlc"};
  app.require_subcommand(1);
  std::string caps_text;
  app.add_option("--caps", caps_text, "Resource caps, e.g. vertices=N,simplices=M,group_order=K");

  std::string file, ring = "z", germ_spec, output, perm_cmd;
  bool reduced = false, as_json = false, pairs = false;
  std::size_t radius = 0, scale = 1, max_dim = 2, threads = 1;
  int cap = inference::kDefaultCap;
  std::optional<std::size_t> margin;
  std::vector<std::size_t> radii, scales, dims{1};

  auto* hom = app.add_subcommand("homology", "Homology of a simplicial complex given as JSON");
  hom->add_option("file", file)->required();
  hom->add_option("--ring", ring)->check(CLI::IsMember({"z", "q", "Z", "Q"}));
  hom->add_flag("--reduced", reduced);

  auto* rips = app.add_subcommand("rips", "Rips complex P_d of a ball in a germ");
  rips->add_option("germ", germ_spec)->required();
  rips->add_option("-r", radius, "Ball radius")->required();
  rips->add_option("-d", scale, "Rips scale")->required();
  rips->add_option("--max-dim", max_dim, "Top simplex dimension");
  rips->add_option("--ring", ring, "Also print reduced homology over this ring");
  rips->add_option("-o", output, "Write the complex as JSON");

  auto* scan_cmd = app.add_subcommand("brown-scan", "Essential-triviality scan over a grid of windows");
  scan_cmd->add_option("germ", germ_spec)->required();
  scan_cmd->add_option("--radii", radii)->delimiter(',')->required();
  scan_cmd->add_option("--scales", scales)->delimiter(',')->required();
  scan_cmd->add_option("--dims", dims)->delimiter(',');
  scan_cmd->add_option("--margin", margin, "Inner margin (default: largest scale)");
  scan_cmd->add_option("--ring", ring)->check(CLI::IsMember({"z", "q", "Z", "Q"}));
  scan_cmd->add_option("--threads", threads);
  scan_cmd->add_option("-o", output, "CSV output path (stdout if omitted)");
  scan_cmd->add_flag("--pairs", pairs, "Also report pair connectivity along the diagonal");

  auto* deflate = app.add_subcommand("deflate", "Deflated homology of an orbit complex");
  deflate->add_option("file", file)->required();
  auto* cd = app.add_subcommand("cd-report", "cd_Q bounds from an orbit complex");
  cd->add_option("file", file)->required();

  auto* perm_app = app.add_subcommand("perm", "Permutation-module calculus on a finite group");
  perm_app->add_option("cmd", perm_cmd)
      ->required()
      ->check(CLI::IsMember({"transfer", "theta", "mackey", "coinvariants", "summand", "bar-homology"}));
  perm_app->add_option("file", file)->required();

  auto* infer = app.add_subcommand("infer", "Close a group diagram under the rule catalogue");
  infer->add_option("file", file)->required();
  infer->add_flag("--json", as_json);
  infer->add_option("--cap", cap, "Largest finite degree tracked");

  auto* wreath = app.add_subcommand("wreath", "Cayley-Abels graph of a finite wreath product");
  wreath->add_option("file", file)->required();
  wreath->add_option("-o", output, "Write the graph as ball JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: cli: " << e.what() << '\n';
    return 2;
  }

  try {
    const Caps caps = parse_caps(caps_text);
    if (*hom) {
      const auto k = complex::complex_from_json(io::read_text_file(file, "complex"), caps);
      const auto c = complex::chain_complex(k, parse_ring(ring), reduced);
      out << homology::homology(c).to_string() << '\n';
    } else if (*rips) {
      const auto b = germ::ball(*germ::parse_germ(germ_spec), radius, caps);
      const auto k = complex::rips(b, scale, max_dim, caps);
      out << "ball: " << b.size() << " vertices, " << b.edges.size() << " edges\n";
      out << "rips: f = " << f_vector(k) << ", euler = " << k.euler_characteristic() << '\n';
      if (rips->count("--ring")) {
        const auto c = complex::chain_complex(k, parse_ring(ring), true);
        out << homology::homology(c).to_string() << '\n';
      }
      if (!output.empty()) write_file(output, complex::complex_to_json(k));
    } else if (*scan_cmd) {
      scan::ScanGrid grid;
      grid.germ = germ::parse_germ(germ_spec);
      grid.radii = radii;
      grid.scales = scales;
      grid.dims = dims;
      grid.inner_margin = margin;
      grid.ring = scan_cmd->count("--ring") ? parse_ring(ring) : linalg::Ring::Q;
      grid.threads = std::max<std::size_t>(threads, 1);
      grid.caps = caps;
      const auto profile = scan::brown_scan(grid);
      const std::string csv = scan::profile_to_csv(profile);
      if (output.empty()) out << csv;
      else write_file(output, csv);
      out << scan::profile_summary(profile);
      if (pairs) out << scan::pair_steps_to_csv(scan::pair_connectivity_scan(grid));
    } else if (*deflate) {
      const auto oc = orbit::from_json(io::read_text_file(file, "orbit"));
      const auto h = orbit::deflate_homology(oc);
      std::string line;
      for (std::size_t p = 0; p < h.size(); ++p)
        line += (p ? ", " : "") + std::string("dH") + std::to_string(p) + "=" +
                homology::format_group({h[p], {}}, linalg::Ring::Q);
      out << line << '\n';
      out << "contractible: " << (oc.contractible ? "asserted" : "not asserted") << '\n';
    } else if (*cd) {
      const auto oc = orbit::from_json(io::read_text_file(file, "orbit"));
      const auto r = orbit::cd_report(oc);
      out << "cd_Q <= " << r.upper << " (dimension of X)\n";
      if (r.lower) out << "top nonvanishing degree: " << *r.lower << '\n';
      else out << "top nonvanishing degree: none\n";
    } else if (*perm_app) {
      perm_command(perm_cmd, file, caps, out);
    } else if (*infer) {
      const auto db = inference::parse(io::read_text_file(file, "inference"), cap);
      const auto closure = inference::close(db);
      out << (as_json ? inference::report_json(closure) : inference::report_text(closure));
      return closure.contradictions().empty() ? 0 : 1;
    } else if (*wreath) {
      std::vector<group::Permutation> u;
      const auto spec = germ::wreath_spec_from_json(io::read_text_file(file, "germ"), &u);
      const auto b = germ::wreath_cayley_abels(spec, u, caps);
      std::size_t degree = 0;
      for (const auto& a : b.adjacency) degree = std::max(degree, a.size());
      out << "vertices: " << b.size() << "\nedges: " << b.edges.size() << "\ndegree: " << degree
          << "\ndiameter: " << b.r << '\n';
      if (!output.empty()) write_file(output, germ::ball_to_json(b));
    }
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace tdlc::cli
