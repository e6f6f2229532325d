#include "diffcurv/fieldspec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "diffcurv/circle.hpp"

namespace diffcurv {

using json = nlohmann::ordered_json;

const TrigPoly& FieldSpec::scalar() const {
  if (components.size() != 1)
    throw DomainError("field spec: expected a single-component field");
  return components.front();
}

VectorField2 FieldSpec::field2() const {
  if (dim != 2 || components.size() != 2)
    throw DomainError("field spec: expected a two-component 2d field");
  return {components[0], components[1]};
}

namespace {

TrigPoly parse_component(const json& jc, int dim, std::array<double, 2> period) {
  TrigPoly p = TrigPoly::zero(dim, period);
  if (!jc.contains("terms") || !jc["terms"].is_array())
    throw DomainError("field spec: component without terms array");
  for (const auto& jt : jc["terms"]) {
    const std::string trig = jt.at("trig").get<std::string>();
    if (trig != "cos" && trig != "sin")
      throw DomainError("field spec: trig must be cos or sin");
    const auto nvec = jt.at("n").get<std::vector<int>>();
    if (static_cast<int>(nvec.size()) != dim)
      throw DomainError("field spec: mode length does not match dim");
    Mode n{nvec[0], dim == 2 ? nvec[1] : 0};
    p.add_term(trig == "sin", n, jt.at("amp").get<double>());
  }
  p.prune();
  return p;
}

}  // namespace

FieldSpec parse_field_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("field spec: invalid JSON: ") + e.what());
  }
  FieldSpec spec;
  spec.dim = j.at("dim").get<int>();
  if (spec.dim != 1 && spec.dim != 2) throw DomainError("field spec: dim must be 1 or 2");
  const auto periods = j.at("period").get<std::vector<double>>();
  if (static_cast<int>(periods.size()) != spec.dim)
    throw DomainError("field spec: period length does not match dim");
  spec.period = {periods[0], spec.dim == 2 ? periods[1] : 1.0};
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
    throw DomainError("field spec: needs a nonempty components array");
  for (const auto& jc : j["components"])
    spec.components.push_back(parse_component(jc, spec.dim, spec.period));
  if (spec.components.size() > 2) throw DomainError("field spec: at most two components");
  return spec;
}

FieldSpec load_field_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("field spec: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_field_spec(ss.str());
}

namespace {

json component_to_json(const TrigPoly& p) {
  json jc;
  jc["terms"] = json::array();
  for (const auto& [n, a] : p.terms()) {
    json base;
    base["n"] = p.dim() == 1 ? std::vector<int>{n[0]} : std::vector<int>{n[0], n[1]};
    if (a.c != 0.0) {
      json jt = base;
      jt["trig"] = "cos";
      jt["amp"] = a.c;
      jc["terms"].push_back(jt);
    }
    if (a.s != 0.0) {
      json jt = base;
      jt["trig"] = "sin";
      jt["amp"] = a.s;
      jc["terms"].push_back(jt);
    }
  }
  return jc;
}

json spec_to_json_obj(const FieldSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["period"] = spec.dim == 1 ? std::vector<double>{spec.period[0]}
                              : std::vector<double>{spec.period[0], spec.period[1]};
  j["components"] = json::array();
  for (const auto& c : spec.components) j["components"].push_back(component_to_json(c));
  return j;
}

}  // namespace

std::string field_spec_to_json(const FieldSpec& spec) {
  return spec_to_json_obj(spec).dump(2);
}

std::string field_spec_to_json(const TrigPoly& scalar) {
  FieldSpec spec;
  spec.dim = scalar.dim();
  spec.period = scalar.period();
  spec.components = {scalar};
  return field_spec_to_json(spec);
}

std::string field_spec_to_json(const VectorField2& field) {
  FieldSpec spec;
  spec.dim = 2;
  spec.period = field.period();
  spec.components = {field.x, field.y};
  return field_spec_to_json(spec);
}

namespace {

std::vector<double> parse_args(const std::string& s) {
  std::vector<double> args;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (...) {
      throw DomainError("builtin field: bad numeric argument '" + tok + "'");
    }
  }
  return args;
}

FieldSpec wrap1(TrigPoly p) {
  FieldSpec spec;
  spec.dim = p.dim();
  spec.period = p.period();
  spec.components = {std::move(p)};
  return spec;
}

FieldSpec wrap2(VectorField2 f) {
  FieldSpec spec;
  spec.dim = 2;
  spec.period = f.period();
  spec.components = {std::move(f.x), std::move(f.y)};
  return spec;
}

}  // namespace

FieldSpec builtin_field(const std::string& name_and_args) {
  const auto colon = name_and_args.find(':');
  const std::string name = name_and_args.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{}
                                 : parse_args(name_and_args.substr(colon + 1));
  auto need = [&](std::size_t n) {
    if (args.size() < n)
      throw DomainError("builtin field '" + name + "': expected " + std::to_string(n) +
                        " argument(s)");
  };
  auto arg_int = [&](std::size_t i) { return static_cast<int>(std::llround(args[i])); };

  if (name == "cos") {
    need(1);
    return wrap1(TrigPoly::cosx(arg_int(0), args.size() > 1 ? args[1] : 1.0));
  }
  if (name == "sin") {
    need(1);
    return wrap1(TrigPoly::sinx(arg_int(0), args.size() > 1 ? args[1] : 1.0));
  }
  if (name == "const") {
    need(1);
    return wrap1(TrigPoly::constant(args[0]));
  }
  if (name == "cos-plus-const") {
    need(2);
    return wrap1(TrigPoly::constant(args[1]) + TrigPoly::cosx(arg_int(0)));
  }
  if (name == "stream-cos") {
    need(2);
    return wrap1(TrigPoly::cosxy(arg_int(0), arg_int(1)));
  }
  if (name == "shear-sin") {
    return wrap2({TrigPoly::harmonic(true, {1, 0}, 1.0, 2), TrigPoly::zero(2)});
  }
  if (name == "shear-sin2-y") {
    // sin^2(2 pi x) = 1/2 - cos(4 pi x)/2
    TrigPoly g = TrigPoly::constant(0.5, 2) + TrigPoly::cosxy(2, 0, -0.5);
    return wrap2({TrigPoly::zero(2), g});
  }
  if (name == "sin-pair-x") {
    need(1);
    return wrap2({TrigPoly::harmonic(true, {arg_int(0), 0}, 1.0, 2), TrigPoly::zero(2)});
  }
  if (name == "sin-pair-y") {
    need(1);
    return wrap2({TrigPoly::zero(2), TrigPoly::harmonic(true, {arg_int(0), 0}, 1.0, 2)});
  }
  if (name == "negcert-u" || name == "negcert-v") {
    need(2);
    const auto cert = negative_section(CircleMetric::sobolev_ab(args[0], args[1]));
    return wrap1(name == "negcert-u" ? cert.u : cert.v);
  }
  if (name == "meanh1-u" || name == "meanh1-v") {
    need(2);
    const auto [u, v] = mean_weighted_negative_pair(args[1], arg_int(0));
    return wrap1(name == "meanh1-u" ? u : v);
  }
  if (name == "hf-limit-f" || name == "hf-limit-g") {
    need(1);
    const int k = arg_int(0);
    const std::array<double, 2> period = {kTwoPi, kTwoPi};
    if (name == "hf-limit-f")
      return wrap1(TrigPoly::cosxy(3 * k, -1, 1.0, period) +
                   TrigPoly::cosxy(3 * k, 2, 1.0, period));
    return wrap1(TrigPoly::cosxy(k, 1, 1.0, period) + TrigPoly::cosxy(k, -2, 1.0, period));
  }
  throw DomainError("unknown builtin field '" + name + "'");
}

std::string certificate_to_json(const NegativeSectionCertificate& cert) {
  json j;
  j["regime"] = cert.regime;
  j["a"] = cert.a;
  j["b"] = cert.b;
  j["alpha"] = cert.alpha;
  j["j"] = cert.j;
  j["r"] = cert.r;
  j[cert.regime == 1 ? "phi" : "psi"] = cert.coefficient;
  j["S"] = cert.S_direct;
  j["S_closed_form"] = cert.S_symbolic;
  FieldSpec u;
  u.dim = 1;
  u.period = cert.u.period();
  u.components = {cert.u};
  FieldSpec v = u;
  v.components = {cert.v};
  j["u"] = json::parse(field_spec_to_json(u));
  j["v"] = json::parse(field_spec_to_json(v));
  return j.dump(2);
}

std::vector<std::pair<std::string, std::string>> builtin_field_names() {
  return {
      {"cos:n[,amp]", "cos(2 pi n x) on the unit circle"},
      {"sin:n[,amp]", "sin(2 pi n x) on the unit circle"},
      {"const:v", "constant field"},
      {"cos-plus-const:n,c", "c + cos(2 pi n x)"},
      {"stream-cos:j,k", "stream function cos(2 pi (j x + k y)) on the unit torus"},
      {"shear-sin", "sin(2 pi x) d/dx"},
      {"shear-sin2-y", "sin^2(2 pi x) d/dy"},
      {"sin-pair-x:k", "sin(2 pi k x) d/dx"},
      {"sin-pair-y:k", "sin(2 pi k x) d/dy"},
      {"negcert-u:a,b / negcert-v:a,b", "negative-curvature section of the a-b metric"},
      {"meanh1-u:k,c / meanh1-v:k,c", "negative section of the mean-weighted H1 metric"},
      {"hf-limit-f:k / hf-limit-g:k", "high-frequency stream pair on the 2 pi torus"},
  };
}

}  // namespace diffcurv
