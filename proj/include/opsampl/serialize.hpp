#pragma once

#include <json.hpp>

#include "opsampl/identify.hpp"
#include "opsampl/spark.hpp"
#include "opsampl/types.hpp"

// JSON schemas (schema_version 1, documented in docs/schemas.md):
//   LatticeParams  {"P","R","K","T"}
//   SupportSet     {"params", "cells": [[q,m],...], "doppler_shift"}
//   SpreadingGrid  {"params", "entries": [{"tau","mu","value":[re,im]},...]}
//   SparkCertificate {"spark","witness","minors_checked","min_abs_minor",
//                     "exhaustive","elapsed_seconds"}
// nlohmann::json keeps object keys sorted, so dumps are deterministic.

namespace opsampl {

using json = nlohmann::json;

json to_json(const LatticeParams& p);
LatticeParams lattice_from_json(const json& j);

json to_json(const SupportSet& s);
SupportSet support_from_json(const json& j);

json to_json(const SpreadingGrid& g);
SpreadingGrid spreading_from_json(const json& j);

json to_json(const SparkCertificate& c);

json to_json(const IdentResult& r);

// residual table, one line per grid point: j,k,residual,cond
std::string residual_csv(const IdentResult& r, const LatticeParams& params);

}  // namespace opsampl
