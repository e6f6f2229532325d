#pragma once

// Field-spec JSON: the on-disk format for scalar fields, 1d velocity
// fields, stream functions and 2d vector fields, plus the named built-in
// generators the CLI and the verification suite share.
//
//   {
//     "dim": 1 | 2,
//     "period": [L] | [Lx, Ly],
//     "components": [ { "terms": [ {"trig": "cos"|"sin",
//                                   "n": [ints], "amp": real} ] }, ... ]
//   }
//
// One component: scalar field / 1d velocity / stream function.  Two
// components: a 2d vector field (x and y components).

#include <string>
#include <vector>

#include "diffcurv/field2d.hpp"
#include "diffcurv/trigpoly.hpp"

namespace diffcurv {

struct FieldSpec {
  int dim = 1;
  std::array<double, 2> period = {1.0, 1.0};
  std::vector<TrigPoly> components;  // size 1 or 2

  const TrigPoly& scalar() const;
  VectorField2 field2() const;
};

FieldSpec parse_field_spec(const std::string& json_text);
FieldSpec load_field_spec(const std::string& path);
std::string field_spec_to_json(const FieldSpec& spec);
std::string field_spec_to_json(const TrigPoly& scalar);
std::string field_spec_to_json(const VectorField2& field);

// Built-in generators, "name" or "name:arg1,arg2,...".  Names:
//   cos:n [,amp]        cos(2 pi n x) on the unit circle
//   sin:n [,amp]        sin(2 pi n x)
//   const:v             the constant field v
//   stream-cos:j,k      cos(2 pi (j x + k y)) stream function (unit torus)
//   shear-sin           sin(2 pi x) d/dx
//   shear-sin2-y        sin^2(2 pi x) d/dy
//   sin-pair-x:k        sin(2 pi k x) d/dx
//   sin-pair-y:k        sin(2 pi k x) d/dy
//   negcert-u / negcert-v : a,b   negative-section pair for the a-b metric
//   meanh1-u / meanh1-v : k,c     negative pair of the mean-weighted H1 metric
//   hf-limit-f / hf-limit-g : k   high-frequency stream pair (period 2 pi)
FieldSpec builtin_field(const std::string& name);

// Names and one-line descriptions, for --help output.
std::vector<std::pair<std::string, std::string>> builtin_field_names();

struct NegativeSectionCertificate;

// {regime, a, b, alpha, j, r, coefficient, S, u, v} with the fields as
// embedded field specs.
std::string certificate_to_json(const NegativeSectionCertificate& cert);

}  // namespace diffcurv
