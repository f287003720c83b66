#include "opsampl/serialize.hpp"

#include <sstream>

namespace opsampl {

json to_json(const LatticeParams& p) {
  return json{{"P", p.P}, {"R", p.R}, {"K", p.K}, {"T", p.T}};
}

LatticeParams lattice_from_json(const json& j) {
  LatticeParams p;
  p.P = j.at("P").get<int>();
  p.R = j.value("R", 1);
  p.K = j.value("K", 1);
  p.T = j.value("T", 1.0);
  p.validate();
  return p;
}

json to_json(const SupportSet& s) {
  json cells = json::array();
  for (const Cell& c : s.cells) cells.push_back(json::array({c.q, c.m}));
  return json{{"params", to_json(s.params)},
              {"cells", cells},
              {"doppler_shift", s.doppler_shift}};
}

SupportSet support_from_json(const json& j) {
  SupportSet s;
  s.params = lattice_from_json(j.at("params"));
  for (const json& c : j.at("cells"))
    s.cells.push_back(Cell{c.at(0).get<int>(), c.at(1).get<int>()});
  s.doppler_shift = j.value("doppler_shift", 0.0);
  s.normalize();
  return s;
}

json to_json(const SpreadingGrid& g) {
  json entries = json::array();
  for (const SpreadingGrid::Entry& e : g.entries)
    entries.push_back(json{{"tau", e.tau},
                           {"mu", e.mu},
                           {"value", json::array({e.value.real(), e.value.imag()})}});
  return json{{"params", to_json(g.params)}, {"entries", entries}};
}

SpreadingGrid spreading_from_json(const json& j) {
  SpreadingGrid g;
  g.params = lattice_from_json(j.at("params"));
  for (const json& e : j.at("entries")) {
    const json& v = e.at("value");
    g.add(e.at("tau").get<int>(), e.at("mu").get<int>(),
          cplx{v.at(0).get<double>(), v.at(1).get<double>()});
  }
  g.normalize();
  return g;
}

json to_json(const SparkCertificate& c) {
  return json{{"spark", c.spark},
              {"witness", c.witness},
              {"minors_checked", c.minors_checked},
              {"min_abs_minor", c.min_abs_minor},
              {"exhaustive", c.exhaustive},
              {"elapsed_seconds", c.elapsed_seconds}};
}

json to_json(const IdentResult& r) {
  double max_res = 0.0;
  for (double v : r.residual) max_res = std::max(max_res, v);
  json out{{"eta_hat", to_json(r.eta_hat)},
           {"residual", r.residual},
           {"max_residual", max_res},
           {"cond", r.cond}};
  if (r.kernel_error) out["kernel_error"] = *r.kernel_error;
  return out;
}

std::string residual_csv(const IdentResult& r, const LatticeParams& params) {
  std::ostringstream os;
  os << "j,k,residual,cond\n";
  os.precision(17);
  for (int k = 0; k < params.K; ++k)
    for (int j = 0; j < params.R; ++j)
      os << j << "," << k << "," << r.residual[static_cast<std::size_t>(j) + static_cast<std::size_t>(k) * params.R]
         << "," << r.cond << "\n";
  return os.str();
}

}  // namespace opsampl
