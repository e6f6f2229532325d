// diffcurv -- sectional curvature of right-invariant metrics on
// diffeomorphism groups, with geodesic and stability diagnostics.
//
// Subcommands: curvature, scan, geodesic, jacobi, verify.
// Exit codes: 0 ok, 1 verification failures, 2 configuration error,
// 3 domain/singular-mode error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diffcurv/circle.hpp"
#include "diffcurv/curvature.hpp"
#include "diffcurv/dynamics.hpp"
#include "diffcurv/fieldspec.hpp"
#include "diffcurv/rigid_body.hpp"
#include "diffcurv/semidirect.hpp"
#include "diffcurv/torus.hpp"
#include "diffcurv/verify.hpp"

namespace {

using diffcurv::DomainError;
using diffcurv::TrigPoly;
using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file " + out_path);
  out << text;
}

diffcurv::FieldSpec resolve_field(const std::string& ref) {
  if (ref.find(".json") != std::string::npos || ref.find('/') != std::string::npos)
    return diffcurv::load_field_spec(ref);
  return diffcurv::builtin_field(ref);
}

Eigen::Vector3d parse_triple(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if (vals.size() != 3) throw ConfigError("expected a comma triple, got '" + s + "'");
  return {vals[0], vals[1], vals[2]};
}

std::function<double(double)> lambda_choice(const std::string& name) {
  if (name == "l2") return [](double k2) { return k2; };
  if (name == "biharmonic") return [](double k2) { return k2 * k2; };
  if (name.rfind("custom-power:", 0) == 0) {
    const double p = std::stod(name.substr(std::string("custom-power:").size()));
    return [p](double k2) { return std::pow(k2, 0.5 * p); };
  }
  throw ConfigError("unknown lambda choice '" + name + "' (l2|biharmonic|custom-power:n)");
}

json report_json(const diffcurv::CurvatureReport& r) {
  json j;
  j["S"] = r.S;
  j["norm_u_sq"] = r.nu2;
  j["norm_v_sq"] = r.nv2;
  j["inner_uv"] = r.uv;
  j["degenerate"] = r.degenerate;
  if (!r.degenerate) j["K"] = r.K;
  return j;
}

struct CurvatureArgs {
  std::string metric = "ab";
  double a = 1.0, b = 1.0, c = 0.0;
  double mean_weight = 1.0;
  std::string lambda = "l2";
  double period = 1.0;
  std::string u_ref, v_ref;
  std::vector<std::string> builtins;
  bool negative_section = false;
  std::string out, format = "json";
};

diffcurv::CurvatureReport compute_curvature(const CurvatureArgs& args) {
  std::string u_ref = args.u_ref, v_ref = args.v_ref;
  if (!args.builtins.empty()) {
    if (args.builtins.size() != 2)
      throw ConfigError("--builtin must be given exactly twice (u then v)");
    u_ref = args.builtins[0];
    v_ref = args.builtins[1];
  }
  if (u_ref.empty() || v_ref.empty()) throw ConfigError("two fields required (--u/--v or --builtin)");

  if (args.metric == "rigidbody") {
    const diffcurv::RigidBodyMetric m(parse_triple(args.lambda == "l2" ? "1,1,1" : args.lambda));
    return diffcurv::curvature(m, parse_triple(u_ref), parse_triple(v_ref));
  }

  const auto fu = resolve_field(u_ref);
  const auto fv = resolve_field(v_ref);

  if (args.metric == "ab") {
    const auto m = diffcurv::CircleMetric::sobolev_ab(args.a, args.b, args.period);
    return diffcurv::curvature(m, fu.scalar(), fv.scalar());
  }
  if (args.metric == "hs") {
    const auto m = diffcurv::CircleMetric::homogeneous_h1(1.0, args.period);
    return diffcurv::curvature(m, fu.scalar(), fv.scalar());
  }
  if (args.metric == "much") {
    const auto m = diffcurv::CircleMetric::mean_weighted_h1(args.mean_weight, args.period);
    return diffcurv::curvature(m, fu.scalar(), fv.scalar());
  }
  if (args.metric == "abc" || args.metric == "burgers") {
    const double b = args.metric == "burgers" ? 0.0 : args.b;
    const double c = args.metric == "burgers" ? 0.0 : args.c;
    const diffcurv::TorusSobolevMetric m(args.a, b, c, {args.period, args.period});
    return diffcurv::curvature(m, fu.field2(), fv.field2());
  }
  if (args.metric == "lambda") {
    const diffcurv::TorusStreamMetric m(lambda_choice(args.lambda),
                                        fu.scalar().period());
    return diffcurv::curvature(m, fu.scalar(), fv.scalar());
  }
  if (args.metric == "semidirect") {
    const diffcurv::SemidirectMetric m(args.a, args.b, args.period);
    if (fu.components.size() != 2 || fv.components.size() != 2)
      throw ConfigError("semidirect metric expects two-component (u,f) field specs");
    return diffcurv::curvature(m,
                               diffcurv::SemidirectElement{fu.components[0], fu.components[1]},
                               diffcurv::SemidirectElement{fv.components[0], fv.components[1]});
  }
  throw ConfigError("unknown metric '" + args.metric + "'");
}

struct ScanArgs {
  std::string metric = "ab";
  double a = 1.0, b = 1.0, c = 0.0;
  std::string lambda = "l2";
  int kmax = 6;
  std::string out, format = "csv";
};

std::string run_scan(const ScanArgs& args) {
  std::ostringstream os;
  os.precision(17);
  os << "metric,params,u,v,S,K,sign\n";
  int pos = 0, neg = 0, degen = 0;
  auto tally = [&](const diffcurv::CurvatureReport& r) {
    if (r.degenerate) {
      ++degen;
      return std::string("degenerate");
    }
    if (r.S > 0) ++pos;
    else if (r.S < 0) ++neg;
    return std::string(r.S > 0 ? "positive" : (r.S < 0 ? "negative" : "zero"));
  };

  if (args.metric == "ab") {
    const auto m = diffcurv::CircleMetric::sobolev_ab(args.a, args.b);
    const std::string params = "a=" + std::to_string(args.a) + ";b=" + std::to_string(args.b);
    for (int k = 1; k <= args.kmax; ++k) {
      for (int l = 1; l <= args.kmax; ++l) {
        const std::array<std::pair<std::string, TrigPoly>, 2> us{
            std::make_pair("cos:" + std::to_string(k), TrigPoly::cosx(k)),
            std::make_pair("sin:" + std::to_string(k), TrigPoly::sinx(k))};
        const std::array<std::pair<std::string, TrigPoly>, 2> vs{
            std::make_pair("cos:" + std::to_string(l), TrigPoly::cosx(l)),
            std::make_pair("sin:" + std::to_string(l), TrigPoly::sinx(l))};
        for (const auto& [uname, u] : us)
          for (const auto& [vname, v] : vs) {
            const auto r = diffcurv::curvature(m, u, v);
            os << "ab," << params << "," << uname << "," << vname << "," << r.S << ","
               << (r.degenerate ? 0.0 : r.K) << "," << tally(r) << "\n";
          }
      }
    }
  } else if (args.metric == "lambda") {
    const diffcurv::TorusStreamMetric m(lambda_choice(args.lambda), {1.0, 1.0});
    for (int j = -args.kmax; j <= args.kmax; ++j)
      for (int k = -args.kmax; k <= args.kmax; ++k)
        for (int l = -args.kmax; l <= args.kmax; ++l)
          for (int mm = -args.kmax; mm <= args.kmax; ++mm) {
            const diffcurv::Mode np{j, k}, nq{l, mm};
            if (np == diffcurv::Mode{0, 0} || nq == diffcurv::Mode{0, 0}) continue;
            if (np == nq || (np == diffcurv::Mode{-l, -mm})) continue;
            // canonical representatives only, and each unordered pair once
            if (j < 0 || (j == 0 && k < 0)) continue;
            if (l < 0 || (l == 0 && mm < 0)) continue;
            if (std::make_pair(j, k) > std::make_pair(l, mm)) continue;
            const auto r =
                diffcurv::curvature(m, TrigPoly::cosxy(j, k), TrigPoly::cosxy(l, mm));
            os << "lambda," << args.lambda << ",stream-cos:" << j << ";" << k << ",stream-cos:"
               << l << ";" << mm << "," << r.S << "," << (r.degenerate ? 0.0 : r.K) << ","
               << tally(r) << "\n";
          }
  } else {
    throw ConfigError("scan supports --metric ab or lambda");
  }
  os << "# summary positive=" << pos << " negative=" << neg << " degenerate=" << degen << "\n";
  return os.str();
}

struct GeodesicArgs {
  std::string eq = "ch";
  double a = 1.0, b = 1.0, central = 1.0;
  std::string moments = "1,2,3";
  std::string u0;
  double dt = 1e-3, T = 1.0;
  int modes = 64;
  std::vector<int> track;
  int flow_particles = 0;
  std::string out, flow_out;
};

diffcurv::EquationSpec make_spec(const GeodesicArgs& args) {
  using diffcurv::EquationSpec;
  if (args.eq == "ch") return EquationSpec::camassa_holm(args.a, args.b, args.modes);
  if (args.eq == "burgers") return EquationSpec::burgers(args.a, args.modes);
  if (args.eq == "hs") return EquationSpec::hunter_saxton(args.modes);
  if (args.eq == "kdv") return EquationSpec::kdv(args.central, args.modes);
  if (args.eq == "rigidbody") return EquationSpec::rigid_body(parse_triple(args.moments));
  throw ConfigError("unknown equation '" + args.eq + "' (ch|burgers|hs|kdv|rigidbody)");
}

std::string trajectory_csv(const diffcurv::Trajectory& traj, const std::vector<int>& track) {
  std::ostringstream os;
  os.precision(17);
  os << "t,energy,drift";
  for (const auto& [name, series] : traj.monitors) os << "," << name;
  if (!traj.rb_states.empty()) os << ",u1,u2,u3";
  if (!traj.states.empty())
    for (int n : track) os << ",cos_" << n << ",sin_" << n;
  os << "\n";
  const double e0 = traj.energy.empty() ? 0.0 : traj.energy.front();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << traj.times[i] << "," << traj.energy[i] << ","
       << std::abs(traj.energy[i] - e0) / std::max(std::abs(e0), 1e-300);
    for (const auto& [name, series] : traj.monitors) os << "," << series[i];
    if (!traj.rb_states.empty())
      os << "," << traj.rb_states[i][0] << "," << traj.rb_states[i][1] << ","
         << traj.rb_states[i][2];
    if (!traj.states.empty())
      for (int n : track) {
        const auto c = traj.states[i].coef({n, 0});
        os << "," << c.c << "," << c.s;
      }
    os << "\n";
  }
  if (traj.breakdown) os << "# breakdown t=" << traj.breakdown_time << "\n";
  return os.str();
}

std::string flow_csv(const diffcurv::FlowMap& fm) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (std::size_t p = 0; p < fm.positions.front().size(); ++p) os << ",x" << p;
  os << "\n";
  for (std::size_t i = 0; i < fm.times.size(); ++i) {
    os << fm.times[i];
    for (double x : fm.positions[i]) os << "," << x;
    os << "\n";
  }
  if (fm.first_crossing_time)
    os << "# first_crossing t=" << *fm.first_crossing_time << "\n";
  if (fm.first_collapse_time)
    os << "# first_collapse t=" << *fm.first_collapse_time << "\n";
  return os.str();
}

struct JacobiArgs {
  GeodesicArgs base;
  std::string y0, z0;
  double fd_eps = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature and stability computations for right-invariant metrics"};
  app.require_subcommand(1);

  CurvatureArgs cargs;
  auto* curv = app.add_subcommand("curvature", "sectional curvature of one section");
  curv->add_option("--metric", cargs.metric, "ab|hs|much|abc|burgers|lambda|semidirect|rigidbody");
  curv->add_option("--a", cargs.a);
  curv->add_option("--b", cargs.b);
  curv->add_option("--c", cargs.c);
  curv->add_option("--much-c", cargs.mean_weight, "mean weight of the much metric");
  curv->add_option("--lambda", cargs.lambda, "l2|biharmonic|custom-power:n; moments for rigidbody");
  curv->add_option("--period", cargs.period);
  curv->add_option("--u", cargs.u_ref, "field spec path or builtin name");
  curv->add_option("--v", cargs.v_ref, "field spec path or builtin name");
  curv->add_option("--builtin", cargs.builtins, "builtin name (give twice: u then v)");
  curv->add_flag("--negative-section", cargs.negative_section,
                 "emit a negative-curvature certificate for the a-b metric instead");
  curv->add_option("--out", cargs.out);
  curv->add_option("--format", cargs.format, "json");

  ScanArgs sargs;
  auto* scan = app.add_subcommand("scan", "sign scan over a family of sections");
  scan->add_option("--metric", sargs.metric, "ab|lambda");
  scan->add_option("--a", sargs.a);
  scan->add_option("--b", sargs.b);
  scan->add_option("--c", sargs.c);
  scan->add_option("--lambda", sargs.lambda);
  scan->add_option("--kmax", sargs.kmax, "frequency grid bound");
  scan->add_option("--out", sargs.out);
  scan->add_option("--format", sargs.format, "csv");

  GeodesicArgs gargs;
  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic flow");
  geo->add_option("--eq", gargs.eq, "ch|burgers|hs|kdv|rigidbody");
  geo->add_option("--a", gargs.a);
  geo->add_option("--b", gargs.b);
  geo->add_option("--central", gargs.central, "KdV dispersion coefficient");
  geo->add_option("--moments", gargs.moments, "rigid-body moments l1,l2,l3");
  geo->add_option("--u0", gargs.u0, "initial state: builtin, file, or triple")->required();
  geo->add_option("--dt", gargs.dt);
  geo->add_option("--T", gargs.T);
  geo->add_option("--modes", gargs.modes, "Galerkin cutoff");
  geo->add_option("--track", gargs.track, "mode indices to emit as coefficient columns")
      ->delimiter(',');
  geo->add_option("--flow-particles", gargs.flow_particles, "also compute the flow map");
  geo->add_option("--out", gargs.out);
  geo->add_option("--flow-out", gargs.flow_out);

  JacobiArgs jargs;
  auto* jac = app.add_subcommand("jacobi", "linearized (Jacobi) run along a geodesic");
  jac->add_option("--eq", jargs.base.eq, "ch|burgers|hs|rigidbody");
  jac->add_option("--a", jargs.base.a);
  jac->add_option("--b", jargs.base.b);
  jac->add_option("--moments", jargs.base.moments);
  jac->add_option("--u0", jargs.base.u0)->required();
  jac->add_option("--y0", jargs.y0);
  jac->add_option("--z0", jargs.z0)->required();
  jac->add_option("--dt", jargs.base.dt);
  jac->add_option("--T", jargs.base.T);
  jac->add_option("--modes", jargs.base.modes);
  jac->add_option("--fd-eps", jargs.fd_eps, "emit the finite-difference gap at this eps");
  jac->add_option("--out", jargs.base.out);

  std::string only, vout;
  double tol_override = 0.0;
  bool tol_set = false;
  auto* ver = app.add_subcommand("verify", "run the full verification suite");
  ver->add_option("--only", only, "run only checks whose id starts with this");
  ver->add_option("--tol", tol_override, "override every tolerance")
      ->each([&](const std::string&) { tol_set = true; });
  ver->add_option("--out", vout, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*curv) {
      if (cargs.negative_section) {
        const auto cert = diffcurv::negative_section(
            diffcurv::CircleMetric::sobolev_ab(cargs.a, cargs.b, cargs.period));
        write_output(diffcurv::certificate_to_json(cert) + "\n", cargs.out);
        return 0;
      }
      const auto r = compute_curvature(cargs);
      write_output(report_json(r).dump(2) + "\n", cargs.out);
      return 0;
    }
    if (*scan) {
      write_output(run_scan(sargs), sargs.out);
      return 0;
    }
    if (*geo) {
      const auto spec = make_spec(gargs);
      diffcurv::Trajectory traj;
      if (spec.kind == diffcurv::EquationSpec::Kind::RigidBody) {
        traj = diffcurv::integrate(spec, parse_triple(gargs.u0), gargs.dt, gargs.T);
      } else {
        traj = diffcurv::integrate(spec, resolve_field(gargs.u0).scalar(), gargs.dt, gargs.T);
      }
      write_output(trajectory_csv(traj, gargs.track), gargs.out);
      if (gargs.flow_particles > 0) {
        const auto fm = diffcurv::flow_map(traj, gargs.flow_particles);
        write_output(flow_csv(fm), gargs.flow_out);
      }
      return 0;
    }
    if (*jac) {
      const auto spec = make_spec(jargs.base);
      std::ostringstream os;
      os.precision(17);
      if (spec.kind == diffcurv::EquationSpec::Kind::RigidBody) {
        const diffcurv::RigidBodyMetric m(spec.moments);
        const auto run = diffcurv::rigid_body_jacobi(
            m, parse_triple(jargs.base.u0),
            jargs.y0.empty() ? Eigen::Vector3d::Zero().eval() : parse_triple(jargs.y0),
            parse_triple(jargs.z0), jargs.base.dt, jargs.base.T);
        os << "t,y_norm,z_norm\n";
        for (std::size_t i = 0; i < run.times.size(); ++i)
          os << run.times[i] << "," << run.y_norm[i] << "," << run.z_norm[i] << "\n";
      } else {
        const auto u0 = resolve_field(jargs.base.u0).scalar();
        const auto z0 = resolve_field(jargs.z0).scalar();
        const auto y0 = jargs.y0.empty()
                            ? diffcurv::TrigPoly::zero(1, {spec.period, 1.0})
                            : resolve_field(jargs.y0).scalar();
        const auto run = diffcurv::jacobi_linearized(spec, u0, y0, z0, jargs.base.dt,
                                                     jargs.base.T);
        os << "t,y_norm,z_norm";
        if (jargs.fd_eps > 0) os << ",fd_gap_max";
        os << "\n";
        std::optional<double> gap;
        if (jargs.fd_eps > 0)
          gap = diffcurv::jacobi_fd_gap(spec, u0, z0, jargs.fd_eps, jargs.base.dt,
                                        jargs.base.T);
        for (std::size_t i = 0; i < run.base.times.size(); ++i) {
          os << run.base.times[i] << "," << run.y_norm[i] << "," << run.z_norm[i];
          if (gap) os << "," << *gap;
          os << "\n";
        }
      }
      write_output(os.str(), jargs.base.out);
      return 0;
    }
    if (*ver) {
      diffcurv::VerifyOptions opts;
      opts.only = only;
      if (tol_set) opts.tol_override = tol_override;
      const auto report = diffcurv::run_verification(opts);
      std::cout << diffcurv::report_to_table(report);
      if (!vout.empty()) write_output(diffcurv::report_to_json(report) + "\n", vout);
      return report.all_pass() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const diffcurv::SingularModeError& e) {
    std::cerr << "singular mode: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
