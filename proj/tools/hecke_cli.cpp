#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "hecke/report.hpp"

using namespace hecke;

namespace {

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("environment variable ") + name + " is not an integer");
  }
}

Poly<BigInt> parse_coeffs(const std::string& text) {
  std::vector<BigInt> desc;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      desc.emplace_back(tok);
    } catch (const std::exception&) {
      throw UsageError("bad coefficient '" + tok + "'");
    }
  }
  if (desc.empty()) throw UsageError("empty coefficient list");
  auto p = Poly<BigInt>::from_desc(std::move(desc));
  if (!p.is_monic()) throw UsageError("polynomial " + p.to_string() + " is not monic (give coefficients highest first)");
  return p;
}

std::string config_text(const std::string& cmd, const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << cmd << " q=" << c.q << " radius=" << c.radius << " precision=" << c.precision
     << " budget=" << c.budget << " workers=" << c.workers << " seed=" << c.seed;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  bool json = false;
  int a = 0, b = 0;
  std::string h1_text, h2_text;
  try {
    cfg.q = env_int("HECKE_Q", cfg.q);
    cfg.precision = env_int("HECKE_PRECISION", cfg.precision);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Hecke operators, Satake transforms and conductors on the U(3) x U(2) tree pair"};
  app.require_subcommand(1);
  app.add_option("--q", cfg.q, "residue field size (odd prime power; env HECKE_Q)");
  app.add_option("--radius", cfg.radius, "tree generation radius");
  app.add_option("--precision", cfg.precision, "series truncation M (env HECKE_PRECISION)");
  app.add_option("--budget", cfg.budget, "enumeration cap for the conductor search");
  app.add_option("--workers", cfg.workers, "worker threads for the conductor search");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_flag("--json", json, "emit one JSON record per line");
  app.add_flag("--stable", cfg.stable, "zero all timings for byte-identical output");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* tree = sub("tree", "tree statistics and unit-sphere retraction tallies");
  auto* inv = sub("invariants", "generator action on invariants against tree tallies");
  inv->add_option("--a", a, "first invariant");
  inv->add_option("--b", b, "second invariant");
  auto* sat = sub("satake", "twisted Satake transform of a double coset");
  sat->add_option("--a", a, "first index");
  sat->add_option("--b", b, "second index");
  auto* hp = sub("hecke-poly", "the Hecke polynomial in the Hecke generators and its round trip");
  auto* p62 = sub("prop62", "distribution relation H(1) applied to (0,0)");
  bool symbolic = true;
  p62->add_flag("--q-symbolic", symbolic, "compute in Z[q, 1/q] (always on)");
  auto* cond = sub("conductor", "determinant conductor of a lattice-pair stabilizer");
  cond->add_option("--a", a, "V-distance a")->required();
  cond->add_option("--b", b, "W-distance b")->required();
  auto* ten = sub("tensor", "composed product and membership certificate");
  ten->add_option("--h1", h1_text, "monic integer coefficients, highest first, comma separated");
  ten->add_option("--h2", h2_text, "monic integer coefficients, highest first, comma separated");
  auto* all = sub("verify-all", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  Recorder rec(cfg.stable);
  try {
    cfg.validate();
    if (a < 0 || b < 0) throw UsageError("invariants must be nonnegative");
    rec.info("config", "run configuration", config_text(cmd, cfg));
    if (*tree) {
      TreePair t(cfg.q, cfg.radius);
      int r = std::min(cfg.radius, 3);
      auto s = t.stats(r);
      std::ostringstream os;
      for (size_t d = 0; d < s.vertices_per_depth.size(); ++d)
        os << (d ? " " : "") << s.vertices_per_depth[d] << "/" << s.w_vertices_per_depth[d];
      rec.info("tree-depth-counts", "vertices per depth in B(V)/B(W), radius " + std::to_string(r), os.str());
      check_satake_multiplicities(rec, {cfg.q});
      check_structure(rec);
    } else if (*inv) {
      rec.info("t10", "t10 applied to the invariant", apply_t10(InvariantVector({a, b})).to_string());
      rec.info("t01", "t01 applied to the invariant", apply_t01(InvariantVector({a, b})).to_string());
      check_operator_oracle(rec, {cfg.q}, std::max(0, std::min(3, cfg.radius - 3)));
    } else if (*sat) {
      if (a + b > 4) throw UsageError("satake supports a + b <= 4");
      rec.info("satake-image", "twisted Satake image", torus_to_string(satake_symbolic(a, b)));
      check_generator_images(rec);
    } else if (*hp) {
      auto f = hecke_polynomial_hecke_basis();
      rec.info("hecke-h2", "H2 in the Hecke generators", zpoly_to_string(f.h2, kHeckeNames));
      rec.info("hecke-h4", "H4 in the Hecke generators", zpoly_to_string(f.h4, kHeckeNames));
      check_hecke_round_trip(rec);
    } else if (*p62) {
      rec.info("distribution-value", "H(1) applied to (0,0)", distribution_check().value.to_string());
      check_distribution(rec);
    } else if (*cond) {
      check_conductor_case(rec, a, b, cfg.q, cfg.precision, cfg);
    } else if (*ten) {
      if (h1_text.empty() != h2_text.empty()) throw UsageError("give both --h1 and --h2 or neither");
      if (h1_text.empty()) {
        check_tensor(rec, cfg.seed);
      } else {
        auto h1 = parse_coeffs(h1_text), h2 = parse_coeffs(h2_text);
        auto h = composed_product(h1, h2);
        rec.info("composed-product", "H1 (x) H2", h.to_string());
        rec.check("composed-oracle", "companion Kronecker charpoly", [&] {
          auto o = composed_product_oracle(h1, h2);
          return CheckResult{o == h, o.to_string(), h.to_string()};
        });
        rec.check("certificate", "ideal membership certificate", [&] {
          auto c = membership_certificate(h1, h2);
          return CheckResult{c.verify() && c.degrees_ok(), "H(z1 z2) - H1 P - H2 Q = 0",
                             "P = " + c.P.to_string("z1", [](const Poly<BigInt>& x) { return x.to_string("z2"); }) +
                                 "; Q = " + c.Q.to_string("z1", [](const Poly<BigInt>& x) { return x.to_string("z2"); })};
        });
      }
    } else if (*all) {
      for (const auto& c : acceptance_criteria()) c.run(rec, cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << cmd << ": " << e.what() << "\n";
    return 2;
  }

  auto& rs = rec.records();
  if (json) {
    std::string out = emit_records(rs);
    if (parse_records(out) != rs) {
      std::cerr << "internal error: structured output does not round-trip\n";
      return 3;
    }
    std::cout << out;
  } else {
    for (const auto& r : rs) std::cout << text_line(r) << "\n";
  }
  return any_failed(rs) ? 1 : 0;
}
