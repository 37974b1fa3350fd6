#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "sympack/errors.hpp"
#include "sympack/toric_domains.hpp"

#ifndef SYMPACK_VERSION
#define SYMPACK_VERSION "0.0.0"
#endif

namespace sympack::cli {

namespace {

struct Globals {
  unsigned precision = kDefaultPrecisionBits;
  std::string mode = "conservative";
  bool json = false;
  bool trace = false;
  bool report = false;
};

/// Result of one command: a JSON payload or raw text (CSV), plus exit code.
struct Outcome {
  int code = kSuccess;
  Json payload;
  std::string text;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void require_positive(std::span<const Rational> values, const char* what) {
  for (const auto& v : values) {
    if (v.sign() <= 0) throw InvalidInput(std::string(what) + " must be positive, got " + v.str());
  }
}

BranchRef parse_branch(const std::string& text, std::size_t components) {
  const auto dot = text.find('.');
  const auto comp = Rational::parse(text.substr(0, dot));
  const auto branch = dot == std::string::npos ? Rational(0) : Rational::parse(text.substr(dot + 1));
  if (!comp.is_integer() || comp < Rational(1) || comp > Rational(static_cast<long>(components))) {
    throw InvalidInput("component index out of range: " + text);
  }
  if (!branch.is_integer() || branch.sign() < 0) throw InvalidInput("branch must be a non-negative integer: " + text);
  return BranchRef{static_cast<std::size_t>(comp.numerator().get_si() - 1),
                   static_cast<unsigned>(branch.numerator().get_si())};
}

Ellipsoid parse_ellipsoid(std::string_view text) {
  const auto d = parse_domain(text);
  if (const auto* e = std::get_if<Ellipsoid>(&d)) return *e;
  if (const auto* b = std::get_if<Ball>(&d)) return Ellipsoid{b->capacity, b->capacity};
  throw InvalidInput("expected an ellipsoid, got " + std::string(text));
}

/// role:E(a,b)[@c[.branch][,c2[.branch]]] with 1-based components.
EllipsoidAssignment parse_assignment(const std::string& text, std::size_t components) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("assignment needs role:E(a,b)@component: " + text);
  const auto role = text.substr(0, colon);
  const auto at = text.find('@', colon);
  EllipsoidAssignment a;
  a.ellipsoid = parse_ellipsoid(text.substr(colon + 1, at == std::string::npos ? std::string::npos : at - colon - 1));
  const std::string where = at == std::string::npos ? "" : text.substr(at + 1);
  if (role == "free") {
    a.role = AxisRole::free;
    return a;
  }
  if (where.empty()) throw InvalidInput("assignment needs @component: " + text);
  if (role == "first") {
    a.role = AxisRole::first_axis;
    a.first = parse_branch(where, components);
  } else if (role == "second") {
    a.role = AxisRole::second_axis;
    a.second = parse_branch(where, components);
  } else if (role == "cross") {
    const auto comma = where.find(',');
    if (comma == std::string::npos) throw InvalidInput("cross assignment needs two components: " + text);
    a.role = AxisRole::cross;
    a.first = parse_branch(where.substr(0, comma), components);
    a.second = parse_branch(where.substr(comma + 1), components);
  } else {
    throw InvalidInput("unknown assignment role '" + role + "'");
  }
  return a;
}

std::string rational_grid_csv(const Rational& amin, const Rational& amax, const Rational& step, unsigned precision,
                              Json* rows) {
  std::ostringstream csv;
  csv << "a,conservative,optimistic,p,kappa_sq\n";
  for (Rational a = amin; a <= amax; a += step) {
    const auto d = derive_lambda_bound(Target{Ellipsoid{Rational(1), a}}, precision);
    csv << a.str() << ',' << d.conservative.decimal() << ',' << d.optimistic.decimal() << ',' << d.p << ','
        << d.kappa_squared.str() << '\n';
    if (rows) {
      rows->push_back(Json{{"a", a.str()},
                           {"conservative", to_json(d.conservative)},
                           {"optimistic", to_json(d.optimistic)},
                           {"p", d.p},
                           {"kappa_sq", d.kappa_squared.str()}});
    }
  }
  return csv.str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds and exact decisions for symplectic ball packings", "sympack"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SYMPACK_VERSION);

  Globals g;
  app.add_option("--precision", g.precision, "MPFR working precision in bits")
      ->envname("SYMPACK_PRECISION")
      ->check(CLI::Range(16u, 65536u));
  app.add_option("--mode", g.mode, "Bound mode")->check(CLI::IsMember({"conservative", "optimistic"}));
  app.add_flag("--json", g.json, "JSON output where CSV is the default");
  app.add_flag("--trace", g.trace, "Include full reduction traces");
  app.add_flag("--report", g.report, "Wrap output in a run report");

  std::function<Outcome()> action;
  Json inputs = Json::object();

  std::string a_text;
  auto* weights = app.add_subcommand("weights", "Weight expansion w(a)");
  weights->add_option("a", a_text, "Rational a >= 1")->required();
  weights->callback([&] {
    action = [&] {
      inputs["a"] = a_text;
      return Outcome{kSuccess, to_json(weight_sequence(Rational::parse(a_text))), {}};
    };
  });

  std::string domain_text;
  auto* vol = app.add_subcommand("volume", "Volume and moment polytope of a domain");
  vol->add_option("domain", domain_text, "B(c), E(a,b), T(a,b,alpha,beta) or P2(c)")->required();
  vol->callback([&] {
    action = [&] {
      inputs["domain"] = domain_text;
      const auto d = parse_domain(domain_text);
      validate(d);
      Json poly = Json::array();
      const auto polytope = moment_polytope(d);
      for (const auto& p : polytope.vertices()) poly.push_back(Json::array({p.x.str(), p.y.str()}));
      return Outcome{kSuccess,
                     Json{{"domain", to_string(d)}, {"volume", volume(d).str()}, {"polytope", std::move(poly)}},
                     {}};
    };
  });

  std::string lambdas_text;
  long search_kmax = 6;
  unsigned threads = 0;
  auto* dstar = app.add_subcommand("dstar", "Dominance bound and lattice search for d_Omega");
  dstar->add_option("--lambdas", lambdas_text, "Blow-up sizes, comma separated")->required();
  dstar->add_option("--search-kmax", search_kmax, "Lattice search depth, 0 to skip")->check(CLI::Range(0L, 1000000L));
  dstar->add_option("--threads", threads, "Worker threads, 0 for hardware concurrency");
  dstar->callback([&] {
    action = [&] {
      inputs["lambdas"] = lambdas_text;
      inputs["search_kmax"] = search_kmax;
      const BlowupForm form(parse_ball_list(lambdas_text));
      Json j{{"lambdas", to_json(form.lambdas())},
             {"kappa_sq", form.kappa_squared().str()},
             {"p", form.size()},
             {"bound", to_json(d_omega_bound(form, g.precision))}};
      if (search_kmax > 0) {
        const auto r = d_omega_search(form, search_kmax, threads);
        j["search_value"] = r.value.str();
        j["witness"] = to_json(r.witness);
        j["k_max"] = r.k_max;
        j["classes_checked"] = r.classes_checked;
        j["proof_step_failures"] = r.proof_step_failures;
      }
      return Outcome{kSuccess, std::move(j), {}};
    };
  });

  std::string mu_text = "1";
  std::string balls_text;
  bool closed = false;
  auto* decide = app.add_subcommand("decide", "Exact Cremona decision for balls in P2(mu)");
  decide->add_option("--mu", mu_text, "Line area of P2");
  decide->add_option("--balls", balls_text, "Ball capacities, e.g. 2/5x5")->required();
  decide->add_flag("--closed", closed, "Closed balls: volume constraint is strict");
  decide->callback([&] {
    action = [&] {
      inputs["mu"] = mu_text;
      inputs["balls"] = balls_text;
      const auto mu = Rational::parse(mu_text);
      const auto balls = parse_ball_list(balls_text);
      if (mu.sign() <= 0) throw InvalidInput("mu must be positive");
      require_positive(balls, "ball capacities");
      ReductionOptions opts;
      opts.volume = closed ? VolumeSemantics::closed_balls : VolumeSemantics::open_balls;
      const auto t = reduce(PackingVector{mu, balls}, opts);
      Json j = to_json(t, g.trace);
      j["verdict"] = t.accepted ? "accept" : "reject";
      return Outcome{t.accepted ? kSuccess : kRejected, std::move(j), {}};
    };
  });

  std::size_t n_balls = 1;
  std::string tol_text = "1/1000000000";
  auto* meb = app.add_subcommand("max-equal-ball", "Largest equal capacity for N balls in P2(1)");
  meb->add_option("n,--n", n_balls, "Number of balls")->required()->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  meb->add_option("--tol", tol_text, "Bisection tolerance");
  meb->callback([&] {
    action = [&] {
      inputs["n"] = n_balls;
      inputs["tol"] = tol_text;
      const auto tol = Rational::parse(tol_text);
      if (tol.sign() <= 0) throw InvalidInput("tolerance must be positive");
      const auto v = max_equal_ball(n_balls, tol);
      return Outcome{kSuccess,
                     Json{{"n", n_balls}, {"value", v.str()}, {"approx", v.to_double()}, {"tol", tol.str()}},
                     {}};
    };
  });

  std::string target_text;
  auto* certify = app.add_subcommand("certify", "Packing-stability certificate");
  certify->add_option("--target", target_text, "E(a,b), T(a,b,alpha,beta), B(c) or P2(mu;l1,...)")->required();
  certify->add_option("--balls", balls_text, "Ball capacities")->required();
  certify->callback([&] {
    action = [&] {
      inputs["target"] = target_text;
      inputs["balls"] = balls_text;
      const auto c = certify_packing(parse_target(target_text), parse_ball_list(balls_text),
                                     parse_bound_mode(g.mode), g.precision);
      return Outcome{c.certified ? kSuccess : kRejected, to_json(c), {}};
    };
  });

  std::string ell_a;
  auto* edec = app.add_subcommand("ellipsoid-decide", "Exact decision for balls in E(1,a)");
  edec->add_option("-a", ell_a, "Aspect ratio a > 1")->required();
  edec->add_option("--balls", balls_text, "Ball capacities")->required();
  edec->callback([&] {
    action = [&] {
      inputs["a"] = ell_a;
      inputs["balls"] = balls_text;
      const auto d = decide_balls_into_ellipsoid(Rational::parse(ell_a), parse_ball_list(balls_text));
      Json j = to_json(d, g.trace);
      j["verdict"] = d.accepted ? "accept" : "reject";
      return Outcome{d.accepted ? kSuccess : kRejected, std::move(j), {}};
    };
  });

  std::string components_text;
  std::vector<std::string> assign_texts;
  std::string directed_input;
  auto* directed = app.add_subcommand("directed-check", "Area hypotheses for a directed ellipsoid packing");
  directed->add_option("--components", components_text, "Component areas, comma separated");
  directed->add_option("--assign", assign_texts, "role:E(a,b)@component, role in first|second|cross|free");
  directed->add_option("--input", directed_input, "JSON file {components, assignments}");
  directed->callback([&] {
    action = [&] {
      std::vector<Rational> areas;
      std::vector<EllipsoidAssignment> assignments;
      if (!directed_input.empty()) {
        const auto j = read_json_file(directed_input);
        inputs["input"] = directed_input;
        if (!j.contains("components") || !j.contains("assignments")) {
          throw InvalidInput("directed-check input needs \"components\" and \"assignments\"");
        }
        areas = capacities_from_json(j["components"]);
        for (const auto& s : j["assignments"]) assignments.push_back(parse_assignment(s.get<std::string>(), areas.size()));
      } else {
        inputs["components"] = components_text;
        inputs["assign"] = assign_texts;
        areas = parse_ball_list(components_text);
        for (const auto& s : assign_texts) assignments.push_back(parse_assignment(s, areas.size()));
      }
      const auto r = check_directed_hypotheses(areas, assignments);
      return Outcome{r.satisfied ? kSuccess : kRejected,
                     Json{{"satisfied", r.satisfied}, {"slack", to_json(r.slack)}}, {}};
    };
  });

  std::string pol_path;
  std::string balls_path;
  auto* decompose_cmd = app.add_subcommand("decompose", "Decomposition of a polarized manifold into basins");
  decompose_cmd->add_option("--polarization", pol_path, "Polarization JSON file")->required();
  decompose_cmd->add_option("--balls", balls_path, "Ball capacities JSON file");
  decompose_cmd->callback([&] {
    action = [&] {
      inputs["polarization"] = pol_path;
      const auto pol = polarization_from_json(read_json_file(pol_path));
      const auto plan = decompose(pol, parse_bound_mode(g.mode), g.precision);
      Json j = to_json(plan);
      int code = kSuccess;
      if (!balls_path.empty()) {
        inputs["balls"] = balls_path;
        const auto packing = plan_packing(plan, capacities_from_json(read_json_file(balls_path)), g.precision);
        j["packing"] = to_json(packing);
        if (!packing.certified) code = kRejected;
      }
      return Outcome{code, std::move(j), {}};
    };
  });

  std::string amin_text, amax_text, step_text = "1/10";
  auto* atlas = app.add_subcommand("atlas", "Stability bounds for E(1,a) over a rational grid");
  atlas->add_option("--amin", amin_text, "First a, > 1")->required();
  atlas->add_option("--amax", amax_text, "Last a")->required();
  atlas->add_option("--step", step_text, "Grid step");
  atlas->callback([&] {
    action = [&] {
      inputs["amin"] = amin_text;
      inputs["amax"] = amax_text;
      inputs["step"] = step_text;
      const auto amin = Rational::parse(amin_text);
      const auto amax = Rational::parse(amax_text);
      const auto step = Rational::parse(step_text);
      if (amin <= Rational(1)) throw InvalidInput("amin must exceed 1");
      if (step.sign() <= 0) throw InvalidInput("step must be positive");
      if (amin > amax) throw InvalidInput("empty grid: amin > amax");
      if ((amax - amin) / step > Rational(1'000'000)) throw InvalidInput("grid exceeds one million rows");
      Outcome o;
      if (g.json || g.report) {
        Json rows = Json::array();
        o.text = rational_grid_csv(amin, amax, step, g.precision, &rows);
        o.payload = Json{{"rows", std::move(rows)}};
        o.text.clear();
      } else {
        o.text = rational_grid_csv(amin, amax, step, g.precision, nullptr);
      }
      return o;
    };
  });

  std::vector<const char*> argv{"sympack"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }
  if (!action) {
    err << "no command given\n";
    return kInvalidInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const ValidationError& e) {
    Json j{{"error", e.what()}, {"violations", e.violations()}};
    err << j.dump() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << Json{{"error", e.what()}}.dump() << '\n';
    return kInvalidInput;
  } catch (const Json::exception& e) {
    err << Json{{"error", e.what()}}.dump() << '\n';
    return kInvalidInput;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  if (g.report) {
    Json report{{"command", app.get_subcommands().front()->get_name()},
                {"inputs", inputs},
                {"outputs", outcome.payload},
                {"exit_code", outcome.code},
                {"timing_ms", elapsed.count()},
                {"version", SYMPACK_VERSION},
                {"precision", Json{{"bits", g.precision}, {"rounding", "down"}, {"mode", g.mode}}}};
    out << report.dump() << '\n';
  } else if (!outcome.text.empty()) {
    out << outcome.text;
  } else {
    out << outcome.payload.dump() << '\n';
  }
  return outcome.code;
}

}  // namespace sympack::cli
