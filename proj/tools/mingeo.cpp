// mingeo: distances, geodesics, minimal-curve families and the verification
// battery from the command line.
//
// Exit status: 0 ok / pass, 1 check failed, 2 bad input, 3 precondition.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mingeo/report.hpp"

namespace {

using namespace mingeo;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

Matrix load_point(const std::string& path, SpaceTag space) {
  const Matrix m = io::load_matrix(path).matrix;
  require_point(space, m);
  return m;
}

HermitianMatrix load_hermitian(const std::string& path) { return HermitianMatrix::trusted(load_point(path, SpaceTag::Hermitian)); }

PositiveDefiniteMatrix load_positive(const std::string& path) {
  return PositiveDefiniteMatrix::trusted(load_point(path, SpaceTag::Positive));
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string(flag) + " expects comma separated integers, got '" + item + "'");
    }
  }
  return out;
}

Json certificate_json(const UniquenessCertificate& c) {
  Json j;
  j["unique"] = c.unique;
  if (c.unique) j["theta"] = c.theta;
  if (c.violation) j["violating_phases"] = {c.violation->first, c.violation->second};
  return j;
}

Json verdict_json(const MinimalityVerdict& v) {
  Json j;
  j["verdict"] = v.supported ? "SUPPORTED" : "REFUTED";
  j["violated"] = v.violated;
  j["length"] = v.length;
  j["endpoint_trace_norm"] = v.endpoint_trace_norm;
  j["worst_off_block"] = v.worst_off_block;
  j["worst_increment"] = v.worst_increment;
  return j;
}

struct Options {
  std::string space = "unitary";
  std::string p = "inf";
  std::string a, b, out, curve, system, blocks, sign_pattern;
  std::string mode = "detour";
  std::optional<std::uint64_t> seed;
  double detour_scale = 0.5;
  double t = 0.5;
  int segments = 3;
  int samples = 256;
  int pairs = 10;
  int points = 9;
  int max_dim = 4;
  double basis_tolerance = kDefaultEndpointBasisTolerance;
};

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw Error(ErrorCode::ParseError, "--seed is required for this command");
  return *o.seed;
}

int cmd_dist(const Options& o) {
  const SpaceTag space = parse_space(o.space);
  const SchattenIndex p = SchattenIndex::parse(o.p);
  const double d = dist(space, load_point(o.a, space), load_point(o.b, space), p);
  std::printf("%#.12g\n", d);
  return kExitOk;
}

int cmd_geodesic(const Options& o) {
  const SpaceTag space = parse_space(o.space);
  const SchattenIndex p = SchattenIndex::parse(o.p);
  const Matrix a = load_point(o.a, space), b = load_point(o.b, space);
  io::CurveFile f;
  f.curve = sample(geodesic(space, a, b), o.samples);
  f.p_norm = p;
  f.metadata["generator"] = "geodesic";
  f.metadata["length"] = length(f.curve, p).length;
  f.metadata["distance"] = dist(space, a, b, p);
  if (space == SpaceTag::Unitary && on_branch_cut(UnitaryMatrix::trusted(a), UnitaryMatrix::trusted(b))) {
    f.metadata["branch_note"] = "a* b has eigenvalue -1; the principal logarithm picks the +pi branch";
  }
  io::save_curve(o.out, f);
  return kExitOk;
}

int cmd_family(const Options& o) {
  const SpaceTag space = parse_space(o.space);
  const std::uint64_t seed = require_seed(o);
  const SchattenIndex p = SchattenIndex::parse(o.p);
  const FamilyMode mode = o.mode == "geodesic" ? FamilyMode::Geodesic : FamilyMode::Detour;
  io::CurveFile f;
  f.p_norm = p;
  f.metadata["seed"] = seed;
  double expected = 0.0;
  switch (space) {
    case SpaceTag::Unitary: {
      const UnitaryMatrix target = UnitaryMatrix::trusted(load_point(o.a, space));
      PerturbationSpec spec{seed, mode, o.detour_scale, std::nullopt};
      if (!o.sign_pattern.empty()) spec.sign_pattern = parse_int_list(o.sign_pattern, "--sign-pattern");
      f.curve = sample(minimal_family_unitary(target, spec), o.samples);
      const double norm = spectral_norm(log_unitary(target).mat());
      f.metadata["generator"] = "minimal_family_unitary";
      f.metadata["mode"] = o.mode;
      f.metadata["theorem_case"] = norm >= kPi - 1e-9 ? "b" : "a";
      expected = dist_unitary(UnitaryMatrix::identity(target.dim()), target, p);
      break;
    }
    case SpaceTag::Hermitian: {
      const HermitianMatrix d = load_hermitian(o.a);
      f.curve = sample(minimal_family_hermitian(d, seed, o.segments), o.samples);
      const RealVector ev = eigenvalues(d);
      const double zero = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
      f.metadata["generator"] = "minimal_family_hermitian";
      f.metadata["segments"] = o.segments;
      f.metadata["theorem_case"] = {{"positive_block", (ev.array() > zero).count()},
                                    {"kernel_block", (ev.array().abs() <= zero).count()},
                                    {"negative_block", (ev.array() < -zero).count()}};
      expected = dist_hermitian(HermitianMatrix::zero(d.dim()), d, p);
      break;
    }
    case SpaceTag::Grassmann: {
      const OrthogonalProjection a = OrthogonalProjection::trusted(load_point(o.a, space));
      const OrthogonalProjection b = OrthogonalProjection::trusted(load_point(o.b, space));
      f.curve = sample(minimal_family_grassmann(a, b, {seed, mode, o.detour_scale, std::nullopt}), o.samples);
      f.metadata["generator"] = "minimal_family_grassmann";
      f.metadata["mode"] = o.mode;
      f.metadata["theorem_case"] = "grassmann";
      expected = dist_grassmann(a, b, p);
      break;
    }
    case SpaceTag::Positive:
      throw Error(ErrorCode::ParseError, "family supports hermitian, unitary and grassmann");
  }
  f.metadata["length"] = length(f.curve, p).length;
  f.metadata["distance"] = expected;
  io::save_curve(o.out, f);
  return kExitOk;
}

int result_exit(const CheckResult& r) {
  print_json(to_json(r));
  return r.passed ? kExitOk : kExitFail;
}

int cmd_verify_minimality(const Options& o) {
  const MinimalityVerdict v = is_minimal_hermitian_trace(io::load_curve(o.curve).curve, o.basis_tolerance);
  print_json(verdict_json(v));
  return v.supported ? kExitOk : kExitFail;
}

int cmd_verify_pinching(const Options& o) {
  const Matrix basis = io::load_matrix(o.system).matrix;
  (void)UnitaryMatrix(basis);
  const ProjectorSystem system = o.blocks.empty()
                                     ? ProjectorSystem::from_basis(basis)
                                     : ProjectorSystem::from_blocks(basis, [&] {
                                         std::vector<Index> sizes;
                                         for (int s : parse_int_list(o.blocks, "--blocks")) sizes.push_back(s);
                                         return sizes;
                                       }());
  return result_exit(check_pinching_minimality(io::load_curve(o.curve).curve, system));
}

int cmd_verify_unique(const Options& o) {
  const SpaceTag space = parse_space(o.space);
  UniquenessCertificate c;
  if (space == SpaceTag::Unitary) {
    c = is_unique_minimal_unitary(UnitaryMatrix::trusted(load_point(o.a, space)), UnitaryMatrix::trusted(load_point(o.b, space)));
  } else if (space == SpaceTag::Grassmann) {
    c = is_unique_minimal_grassmann(OrthogonalProjection::trusted(load_point(o.a, space)),
                                    OrthogonalProjection::trusted(load_point(o.b, space)));
  } else {
    throw Error(ErrorCode::ParseError, "unique supports unitary and grassmann");
  }
  print_json(certificate_json(c));
  return kExitOk;
}

int cmd_verify_report(const Options& o) {
  const std::vector<CheckResult> results = run_report(require_seed(o), o.max_dim);
  print_json(to_json(results));
  for (const CheckResult& r : results)
    if (!r.passed) return kExitFail;
  return kExitOk;
}

int cmd_midpoints(const Options& o) {
  const SpaceTag space = parse_space(o.space);
  const IntermediateSetReport r = check_midpoint_convexity(load_point(o.a, space), load_point(o.b, space), o.t, space,
                                                           SchattenIndex::parse(o.p), o.pairs, require_seed(o));
  print_json(to_json(r));
  return r.convexity_passed ? kExitOk : kExitFail;
}

int run(int argc, char** argv) {
  CLI::App app{"Minimal curves in matrix spaces"};
  app.require_subcommand(1);
  Options o;
  int (*action)(const Options&) = nullptr;

  auto space_opt = [&](CLI::App* c) {
    c->add_option("--space", o.space, "hermitian | unitary | positive | grassmann")->required();
  };
  auto p_opt = [&](CLI::App* c) { c->add_option("--p", o.p, "Schatten index: inf, 1, 2 or a decimal >= 1"); };
  auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "master seed"); };

  CLI::App* dist_cmd = app.add_subcommand("dist", "distance between two points");
  space_opt(dist_cmd);
  p_opt(dist_cmd);
  dist_cmd->add_option("a", o.a)->required();
  dist_cmd->add_option("b", o.b)->required();
  dist_cmd->callback([&] { action = cmd_dist; });

  CLI::App* geo = app.add_subcommand("geodesic", "sample the canonical geodesic");
  space_opt(geo);
  p_opt(geo);
  geo->add_option("a", o.a)->required();
  geo->add_option("b", o.b)->required();
  geo->add_option("--samples", o.samples, "number of intervals")->check(CLI::PositiveNumber);
  geo->add_option("--out", o.out)->required();
  geo->callback([&] { action = cmd_geodesic; });

  CLI::App* fam = app.add_subcommand("family", "sample a member of a minimal-curve family");
  space_opt(fam);
  p_opt(fam);
  seed_opt(fam);
  fam->add_option("target", o.a, "unitary or hermitian endpoint, or the first projection")->required();
  fam->add_option("second", o.b, "second projection (grassmann)");
  fam->add_option("--mode", o.mode)->check(CLI::IsMember({"geodesic", "detour"}));
  fam->add_option("--detour-scale", o.detour_scale);
  fam->add_option("--segments", o.segments)->check(CLI::PositiveNumber);
  fam->add_option("--sign-pattern", o.sign_pattern, "comma separated +1/-1 for the top block when ||X|| = pi");
  fam->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  fam->add_option("--out", o.out)->required();
  fam->callback([&] { action = cmd_family; });

  CLI::App* verify = app.add_subcommand("verify", "run a check");
  verify->require_subcommand(1);

  CLI::App* vmin = verify->add_subcommand("minimality", "trace-norm minimality of a Hermitian curve from 0");
  vmin->add_option("curve", o.curve)->required();
  vmin->add_option("--basis-tolerance", o.basis_tolerance);
  vmin->callback([&] { action = cmd_verify_minimality; });

  CLI::App* vdiag = verify->add_subcommand("diagonal", "monotone diagonals of a curve to a diagonal endpoint");
  vdiag->add_option("curve", o.curve)->required();
  vdiag->callback([&] { action = [](const Options& x) { return result_exit(check_diagonal_monotonicity(io::load_curve(x.curve).curve)); }; });

  CLI::App* veig = verify->add_subcommand("eigencurves", "monotone eigenvalue curves");
  veig->add_option("curve", o.curve)->required();
  veig->callback([&] {
    action = [](const Options& x) {
      const io::CurveFile f = io::load_curve(x.curve);
      return result_exit(check_eigencurve_monotonicity(f.curve, f.curve.space));
    };
  });

  CLI::App* vpinch = verify->add_subcommand("pinching", "pinching contraction and equality");
  vpinch->add_option("curve", o.curve)->required();
  vpinch->add_option("--basis", o.system, "unitary whose columns span the blocks")->required();
  vpinch->add_option("--blocks", o.blocks, "comma separated block sizes (default: rank one)");
  vpinch->callback([&] { action = cmd_verify_pinching; });

  CLI::App* vuniq = verify->add_subcommand("unique", "uniqueness of the minimal curve");
  space_opt(vuniq);
  vuniq->add_option("a", o.a)->required();
  vuniq->add_option("b", o.b)->required();
  vuniq->callback([&] { action = cmd_verify_unique; });

  CLI::App* viemi = verify->add_subcommand("iemi", "exponential metric increasing inequality at (h, k)");
  p_opt(viemi);
  viemi->add_option("hfile", o.a, "Hermitian h")->required();
  viemi->add_option("kfile", o.b, "Hermitian k")->required();
  viemi->callback([&] {
    action = [](const Options& x) {
      return result_exit(check_iemi(load_hermitian(x.a), load_hermitian(x.b), SchattenIndex::parse(x.p)));
    };
  });

  CLI::App* varaki = verify->add_subcommand("araki", "d(c^t, d^t) <= t d(c, d)");
  p_opt(varaki);
  varaki->add_option("c", o.a)->required();
  varaki->add_option("d", o.b)->required();
  varaki->add_option("--t", o.t);
  varaki->callback([&] {
    action = [](const Options& x) {
      return result_exit(check_araki_contraction(load_positive(x.a), load_positive(x.b), x.t, SchattenIndex::parse(x.p)));
    };
  });

  CLI::App* vconv = verify->add_subcommand("convexity", "convexity of s -> d(I, gamma(s)) along a geodesic");
  p_opt(vconv);
  vconv->add_option("a", o.a)->required();
  vconv->add_option("b", o.b)->required();
  vconv->add_option("--points", o.points)->check(CLI::Range(3, 1025));
  vconv->callback([&] {
    action = [](const Options& x) {
      return result_exit(check_convexity_distance(load_positive(x.a), load_positive(x.b), SchattenIndex::parse(x.p), x.points));
    };
  });

  CLI::App* vrep = verify->add_subcommand("report", "the full verification battery");
  seed_opt(vrep);
  vrep->add_option("--max-dim", o.max_dim)->check(CLI::Range(2, 8));
  vrep->callback([&] { action = cmd_verify_report; });

  CLI::App* mid = app.add_subcommand("midpoints", "geodesic convexity of the intermediate-point set");
  space_opt(mid);
  p_opt(mid);
  seed_opt(mid);
  mid->add_option("u", o.a)->required();
  mid->add_option("v", o.b)->required();
  mid->add_option("--t", o.t);
  mid->add_option("--pairs", o.pairs)->check(CLI::PositiveNumber);
  mid->callback([&] { action = cmd_midpoints; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    return action(o);
  } catch (const Error& e) {
    std::cerr << "mingeo: " << e.what() << "\n";
    return is_validation_error(e.code()) ? kExitInput : kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "mingeo: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
