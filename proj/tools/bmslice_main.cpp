// Command-line front end: body JSON I/O, ellipsoid solvers, slice maps,
// orbit distances, the scalar-action demo, and seeded generators.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bmslice/body.hpp"
#include "bmslice/demo_action.hpp"
#include "bmslice/ellipsoid.hpp"
#include "bmslice/json_io.hpp"
#include "bmslice/linalg.hpp"
#include "bmslice/orbit.hpp"
#include "bmslice/sampling.hpp"
#include "bmslice/slicing.hpp"

namespace {

using namespace bmslice;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path, 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << payload;
}

// Polygon outline + ellipse overlay, n = 2 only.
std::string body_svg(const SymBody& body, const Ellipsoid* ell) {
  if (body.dim() != 2) throw Error("svg output supports n = 2 only");
  const auto& verts = body.rep() == Rep::V ? body.gens() : body.hpoly_vertices();
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : verts) {
    pts.emplace_back(v[0], v[1]);
    pts.emplace_back(-v[0], -v[1]);
  }
  std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) {
    return std::atan2(a.second, a.first) < std::atan2(b.second, b.first);
  });
  double scale = 0.0;
  for (auto& [x, y] : pts) scale = std::max(scale, std::hypot(x, y));
  double view = 1.2 * std::max(scale, 1.0);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -view << " " << -view
      << " " << 2 * view << " " << 2 * view << "\">\n";
  svg << "  <polygon points=\"";
  for (auto& [x, y] : pts) svg << fmt12(x) << "," << fmt12(-y) << " ";
  svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << 0.01 * view << "\"/>\n";
  if (ell) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ell->M());
    double a = 1.0 / std::sqrt(es.eigenvalues()[0]);
    double b = 1.0 / std::sqrt(es.eigenvalues()[1]);
    double angle = std::atan2(es.eigenvectors()(1, 0), es.eigenvectors()(0, 0));
    svg << "  <ellipse cx=\"0\" cy=\"0\" rx=\"" << fmt12(a) << "\" ry=\"" << fmt12(b)
        << "\" transform=\"rotate(" << fmt12(-angle * 180.0 / std::numbers::pi)
        << ")\" fill=\"none\" stroke=\"red\" stroke-width=\"" << 0.01 * view << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

struct CommonFlags {
  double eps = 1e-7;
  uint64_t seed = 42;
  int samples = 0;  // 0 = command default
  int workers = 0;  // 0 = hardware concurrency
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--eps", f.eps, "solver tolerance in (0, 1e-2]");
  cmd->add_option("--seed", f.seed, "RNG seed for seeded commands");
  cmd->add_option("--samples", f.samples, "sample count (command-specific default)");
  cmd->add_option("--workers", f.workers, "worker threads (1 = fully serial)");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "output format: json|csv|svg");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1e-2)) throw ParseError("--eps must lie in (0, 1e-2]", 0, 0);
}

int run_demo_remark(const CommonFlags& f) {
  int kmax = f.samples > 0 ? f.samples : 100;
  std::ostringstream csv;
  csv << "k,f_s\n";
  for (int k = 1; k <= kmax; ++k) {
    demo::DemoPoint p(1.0 / k, 1.0);
    csv << k << "," << fmt12(demo::slicing_map(demo::DemoSliceKind::Hyperbola, p)) << "\n";
  }
  emit(f.out, csv.str());

  demo::SetUnion ball{demo::SetDescriptor::ball(0.0, 1.0, 0.1)};
  demo::SetUnion hyp{demo::SetDescriptor::hyperbola_slice()};
  auto env_uh = demo::transporter(ball, hyp);
  auto env_hu = demo::transporter(hyp, ball);
  std::ostringstream rep;
  rep << "{\n";
  rep << "  \"limit_point_value\": " << fmt12(demo::slicing_map(
             demo::DemoSliceKind::Hyperbola, demo::DemoPoint(0.0, 1.0)))
      << ",\n";
  rep << "  \"transporter_ball_to_hyperbola\": {\"lambda_min\": " << fmt12(env_uh.lambda_min)
      << ", \"lambda_max\": " << fmt12(env_uh.lambda_max)
      << ", \"unbounded_above\": " << (env_uh.unbounded_above ? "true" : "false") << "},\n";
  rep << "  \"transporter_hyperbola_to_ball\": {\"lambda_min\": " << fmt12(env_hu.lambda_min)
      << ", \"lambda_max\": " << fmt12(env_hu.lambda_max)
      << ", \"unbounded_below\": " << (env_hu.unbounded_below ? "true" : "false") << "}\n";
  rep << "}";
  std::cerr << rep.str() << "\n";
  return kExitOk;
}

int run_gen(const CommonFlags& f, int n) {
  std::mt19937_64 rng(f.seed);
  SymBody body = random_sym_body(n, rng);
  emit(f.out, write_body_json(body));
  return kExitOk;
}

int run_slice_audit(const CommonFlags& f, int group_count) {
  int nsamples = f.samples > 0 ? f.samples : 100;
  std::mt19937_64 rng(f.seed);
  double eps = f.eps;

  std::vector<SymBody> samples;
  samples.reserve(nsamples);
  for (int i = 0; i < nsamples; ++i)
    samples.push_back(john_position(random_sym_body(2, rng), eps));

  std::vector<GroupElem> group;
  group.reserve(group_count);
  for (int i = 0; i < group_count; ++i) {
    if (i % 2 == 0) {
      group.emplace_back(random_orthogonal(2, rng));
    } else {
      group.emplace_back(random_gl(2, rng, 1.0));
    }
  }

  auto membership = [eps](const SymBody& b) {
    return (john(b, eps).M() - Eigen::MatrixXd::Identity(2, 2)).norm() <=
           kSliceMembershipTol;
  };
  SliceAuditOptions opt;
  opt.seed = f.seed;
  opt.solver_eps = eps;
  auto report = check_slice_axioms(membership, samples, group, opt);
  emit(f.out, write_audit_report_json(report));
  return report.all_passed() ? kExitOk : kExitSolver;
}

int run_net(const CommonFlags& f, double eps_net, int n) {
  int nsamples = f.samples > 0 ? f.samples : 200;
  std::mt19937_64 rng(f.seed);
  std::vector<SymBody> samples;
  samples.reserve(nsamples);
  for (int i = 0; i < nsamples; ++i)
    samples.push_back(john_position(random_sym_body(n, rng), f.eps));
  NetReport report = slice_net(samples, eps_net);
  emit(f.out, write_net_report_json(report));
  return kExitOk;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"slice geometry toolkit for symmetric convex bodies"};
  app.require_subcommand(1);

  CommonFlags f;
  std::string path_a, path_b;
  std::vector<std::string> paths;
  int gen_n = 2;
  int group_count = 50;
  double eps_net = 0.25;

  auto* c_john = app.add_subcommand("john", "John (maximal inscribed) ellipsoid of a body");
  c_john->add_option("body", path_a, "body JSON file")->required();
  add_common(c_john, f);

  auto* c_lowner = app.add_subcommand("lowner", "Loewner (minimal enclosing) ellipsoid");
  c_lowner->add_option("body", path_a, "body JSON file")->required();
  add_common(c_lowner, f);

  auto* c_jpos = app.add_subcommand("john-position", "normalize a body into the John slice");
  c_jpos->add_option("body", path_a, "body JSON file")->required();
  add_common(c_jpos, f);

  auto* c_smap = app.add_subcommand("slice-map", "slicing map value in PD(n)");
  c_smap->add_option("body", path_a, "body JSON file")->required();
  add_common(c_smap, f);

  auto* c_haus = app.add_subcommand("hausdorff", "Hausdorff distance between two bodies");
  c_haus->add_option("a", path_a, "first body")->required();
  c_haus->add_option("b", path_b, "second body")->required();
  add_common(c_haus, f);

  auto* c_bm = app.add_subcommand("bm-dist", "Banach-Mazur distance (n = 2)");
  c_bm->add_option("bodies", paths, "two or more body files")->required()->expected(-2);
  add_common(c_bm, f);

  auto* c_quot = app.add_subcommand("quotient-dist", "orbit-space distance");
  c_quot->add_option("bodies", paths, "two or more body files")->required()->expected(-2);
  add_common(c_quot, f);

  auto* c_audit = app.add_subcommand("slice-audit", "audit the slice axioms for J(2)");
  c_audit->add_option("--group-samples", group_count, "number of group elements");
  add_common(c_audit, f);

  auto* c_demo = app.add_subcommand(
      "demo-remark", "scalar-action demo: discontinuity CSV and transporter envelopes");
  add_common(c_demo, f);

  auto* c_net = app.add_subcommand("net", "greedy eps-net over the John slice");
  c_net->add_option("--net-eps", eps_net, "net radius");
  c_net->add_option("--n", gen_n, "dimension");
  add_common(c_net, f);

  auto* c_gen = app.add_subcommand("gen", "seeded random symmetric polytope");
  c_gen->add_option("--n", gen_n, "dimension");
  add_common(c_gen, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  check_eps(f.eps);

  if (c_john->parsed() || c_lowner->parsed()) {
    SymBody body = read_body_json(slurp(path_a));
    if (f.format == "svg" && body.dim() != 2)
      throw ParseError("svg output supports n = 2 only", 0, 0);
    Ellipsoid e = c_john->parsed() ? john(body, f.eps) : lowner(body, f.eps);
    if (f.format == "svg") {
      emit(f.out, body_svg(body, &e));
    } else {
      emit(f.out, write_ellipsoid_json(e));
    }
    return kExitOk;
  }
  if (c_jpos->parsed()) {
    SymBody body = read_body_json(slurp(path_a));
    if (f.format == "svg" && body.dim() != 2)
      throw ParseError("svg output supports n = 2 only", 0, 0);
    SymBody positioned = john_position(body, f.eps);
    if (f.format == "svg") {
      Ellipsoid ball = Ellipsoid::unit_ball(2);
      emit(f.out, body_svg(positioned, &ball));
    } else {
      emit(f.out, write_body_json(positioned));
    }
    return kExitOk;
  }
  if (c_smap->parsed()) {
    SymBody body = read_body_json(slurp(path_a));
    emit(f.out, write_posdef_json(slicing_map_john(body, f.eps)));
    return kExitOk;
  }
  if (c_haus->parsed()) {
    SymBody a = read_body_json(slurp(path_a));
    SymBody b = read_body_json(slurp(path_b));
    HausdorffOptions opt;
    if (f.samples > 0) opt.samples = f.samples;
    if (f.workers > 0) opt.workers = f.workers;
    emit(f.out, fmt12(hausdorff(a, b, opt)));
    return kExitOk;
  }
  if (c_bm->parsed() || c_quot->parsed()) {
    std::vector<SymBody> bodies;
    for (const auto& p : paths) bodies.push_back(read_body_json(slurp(p)));
    auto dist = [&](const SymBody& x, const SymBody& y) {
      if (c_bm->parsed()) {
        BmOptions opt;
        opt.eps = f.eps;
        if (f.samples > 0) opt.angle_steps = f.samples;
        return bm_distance(x, y, opt);
      }
      QuotientOptions opt;
      opt.eps = f.eps;
      if (f.samples > 0) opt.angle_steps = f.samples;
      return quotient_distance(x, y, opt);
    };
    if (bodies.size() == 2) {
      emit(f.out, fmt12(dist(bodies[0], bodies[1])));
    } else {
      // pairwise distance matrix as CSV
      std::ostringstream csv;
      for (size_t i = 0; i < bodies.size(); ++i) {
        for (size_t j = 0; j < bodies.size(); ++j) {
          if (j) csv << ",";
          csv << (i == j ? "0" : fmt12(i < j ? dist(bodies[i], bodies[j])
                                             : dist(bodies[j], bodies[i])));
        }
        csv << "\n";
      }
      emit(f.out, csv.str());
    }
    return kExitOk;
  }
  if (c_audit->parsed()) return run_slice_audit(f, group_count);
  if (c_demo->parsed()) return run_demo_remark(f);
  if (c_net->parsed()) return run_net(f, eps_net, gen_n);
  if (c_gen->parsed()) return run_gen(f, gen_n);
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what();
    if (e.line > 0) std::cerr << " (line " << e.line << ", column " << e.column << ")";
    std::cerr << "\n";
    return kExitInput;
  } catch (const InvalidBody& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoConvergence& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    std::cerr << "{\"achieved_epsilon\": " << fmt12(e.achieved_epsilon)
              << ", \"iterations\": " << e.iterations << ", \"weights\": [";
    for (size_t i = 0; i < e.weights.size(); ++i) {
      if (i) std::cerr << ", ";
      std::cerr << fmt12(e.weights[i]);
    }
    std::cerr << "]}\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
