// Copyright 2026 The floqlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "floqlind/cli.hpp"

namespace floqlind::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kConfig, "config", (path.empty() ? "" : path + ": ") + message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      config_error(join(path, k), "unknown key");
    }
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) config_error(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a string");
  return j.get<std::string>();
}

template <typename F>
void maybe(const json& obj, const char* key, const std::string& path, F&& f) {
  auto it = obj.find(key);
  if (it != obj.end()) f(*it, join(path, key));
}

GridSpec parse_grid(const json& j, const std::string& path, bool needs_param) {
  if (needs_param) {
    allow_keys(j, path, {"param", "start", "stop", "count", "values"});
  } else {
    allow_keys(j, path, {"start", "stop", "count", "values"});
  }
  GridSpec g;
  if (needs_param) {
    if (!j.contains("param")) config_error(join(path, "param"), "missing");
    g.param = text(j["param"], join(path, "param"));
  }
  if (j.contains("values")) {
    if (j.contains("start") || j.contains("stop") || j.contains("count")) {
      config_error(path, "give either values or start/stop/count");
    }
    const auto& v = j["values"];
    if (!v.is_array()) config_error(join(path, "values"), "expected an array");
    for (std::size_t i = 0; i < v.size(); ++i) {
      g.values.push_back(number(v[i], join(path, "values[" + std::to_string(i) + "]")));
    }
  } else {
    for (const char* k : {"start", "stop", "count"}) {
      if (!j.contains(k)) config_error(join(path, k), "missing");
    }
    const double start = number(j["start"], join(path, "start"));
    const double stop = number(j["stop"], join(path, "stop"));
    const int count = integer(j["count"], join(path, "count"));
    if (count < 1) config_error(join(path, "count"), "grid is empty");
    if (count == 1) {
      if (start != stop) config_error(path, "a single-point grid needs start == stop");
      g.values.push_back(start);
    } else {
      for (int i = 0; i < count; ++i) {
        g.values.push_back(i + 1 == count ? stop : start + (stop - start) * i / (count - 1));
      }
    }
  }
  if (g.values.empty()) config_error(path, "grid is empty");
  for (std::size_t i = 1; i < g.values.size(); ++i) {
    if (!(g.values[i] > g.values[i - 1])) config_error(path, "grid must be strictly increasing");
  }
  return g;
}

ModelParams parse_model(const json& j, const std::string& path) {
  allow_keys(j, path, {"name", "h", "gamma1", "gamma2", "gamma", "jz", "jx", "tau", "L"});
  if (!j.contains("name")) config_error(join(path, "name"), "missing");
  ModelParams p;
  try {
    p.name = parse_model_name(text(j["name"], join(path, "name")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    config_error(join(path, "name"), e.what());
  }
  maybe(j, "h", path, [&](const json& v, const std::string& q) { p.h = number(v, q); });
  maybe(j, "gamma1", path, [&](const json& v, const std::string& q) { p.gamma1 = number(v, q); });
  maybe(j, "gamma2", path, [&](const json& v, const std::string& q) { p.gamma2 = number(v, q); });
  maybe(j, "gamma", path, [&](const json& v, const std::string& q) { p.gamma = number(v, q); });
  maybe(j, "jz", path, [&](const json& v, const std::string& q) { p.jz = number(v, q); });
  maybe(j, "jx", path, [&](const json& v, const std::string& q) { p.jx = number(v, q); });
  maybe(j, "tau", path, [&](const json& v, const std::string& q) { p.tau = number(v, q); });
  const bool single = p.name == ModelName::kA || p.name == ModelName::kB;
  p.num_sites = single ? 1 : 4;
  maybe(j, "L", path, [&](const json& v, const std::string& q) {
    const int L = integer(v, q);
    if (single && L != 1) config_error(q, "models A and B act on a single spin (L = 1)");
    p.num_sites = L;
  });
  try {
    validate(p);
  } catch (const Error& e) {
    config_error(path, e.what());
  }
  return p;
}

std::vector<PauliTerm> parse_terms(const json& j, const std::string& path, int num_sites,
                                   bool real_only) {
  if (!j.is_array()) config_error(path, "expected an array of {pauli, coeff} terms");
  std::vector<PauliTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    allow_keys(j[i], p, {"pauli", "coeff"});
    if (!j[i].contains("pauli")) config_error(join(p, "pauli"), "missing");
    PauliTerm t;
    t.pauli = text(j[i]["pauli"], join(p, "pauli"));
    try {
      const MultiIndex idx = parse_pauli_label(t.pauli);
      if (idx.num_sites() != num_sites) {
        config_error(join(p, "pauli"), "string length differs from num_sites");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConfig) throw;
      config_error(join(p, "pauli"), e.what());
    }
    maybe(j[i], "coeff", p, [&](const json& v, const std::string& q) {
      if (v.is_array()) {
        if (real_only) config_error(q, "Hamiltonian coefficients must be real");
        if (v.size() != 2) config_error(q, "complex coefficients are [re, im]");
        t.coeff = Complex(number(v[0], q + "[0]"), number(v[1], q + "[1]"));
      } else {
        t.coeff = Complex(number(v, q), 0.0);
      }
    });
    out.push_back(std::move(t));
  }
  return out;
}

CustomDrive parse_drive(const json& j, const std::string& path) {
  allow_keys(j, path, {"num_sites", "segments"});
  CustomDrive d;
  if (!j.contains("num_sites")) config_error(join(path, "num_sites"), "missing");
  d.num_sites = integer(j["num_sites"], join(path, "num_sites"));
  if (d.num_sites < 1 || d.num_sites > 6) config_error(join(path, "num_sites"), "must be 1..6");
  if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty()) {
    config_error(join(path, "segments"), "expected a non-empty array");
  }
  const auto& segs = j["segments"];
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string p = join(path, "segments[" + std::to_string(i) + "]");
    allow_keys(segs[i], p, {"duration", "hamiltonian", "jumps"});
    CustomSegment s;
    if (!segs[i].contains("duration")) config_error(join(p, "duration"), "missing");
    s.duration = number(segs[i]["duration"], join(p, "duration"));
    if (!(s.duration > 0.0)) config_error(join(p, "duration"), "must be > 0");
    maybe(segs[i], "hamiltonian", p, [&](const json& v, const std::string& q) {
      s.hamiltonian = parse_terms(v, q, d.num_sites, true);
    });
    maybe(segs[i], "jumps", p, [&](const json& v, const std::string& q) {
      if (!v.is_array()) config_error(q, "expected an array");
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string jp = q + "[" + std::to_string(k) + "]";
        allow_keys(v[k], jp, {"rate", "op"});
        CustomJump jump;
        if (!v[k].contains("rate")) config_error(join(jp, "rate"), "missing");
        jump.rate = number(v[k]["rate"], join(jp, "rate"));
        if (jump.rate < 0.0) config_error(join(jp, "rate"), "must be >= 0");
        if (!v[k].contains("op")) config_error(join(jp, "op"), "missing");
        jump.op = parse_terms(v[k]["op"], join(jp, "op"), d.num_sites, false);
        s.jumps.push_back(std::move(jump));
      }
    });
    d.segments.push_back(std::move(s));
  }
  return d;
}

// Full-space operator and its support for a sum of Pauli products.
std::pair<ComplexMatrix, std::vector<int>> assemble(const std::vector<PauliTerm>& terms,
                                                    int num_sites) {
  const Eigen::Index d = Eigen::Index{1} << num_sites;
  ComplexMatrix op = ComplexMatrix::Zero(d, d);
  std::set<int> support;
  const double unnormalize = std::sqrt(static_cast<double>(d));
  for (const auto& t : terms) {
    const MultiIndex idx = parse_pauli_label(t.pauli);
    op += t.coeff * unnormalize * pauli_string(idx, num_sites);
    for (int s : idx.support()) support.insert(s);
  }
  std::vector<int> sup(support.begin(), support.end());
  // Identity-only terms still act on something; attribute them to site 0.
  if (sup.empty()) sup.push_back(0);
  return {std::move(op), std::move(sup)};
}

}  // namespace

AnalysisConfig parse_config(const json& doc) {
  allow_keys(doc, "", {"model", "drive", "orders", "flavor", "harmonic_cutoff", "tolerances",
                       "weight_limit", "scan", "fit", "compare", "output"});
  AnalysisConfig c;
  if (doc.contains("model") == doc.contains("drive")) {
    config_error("", "exactly one of 'model' or 'drive' is required");
  }
  maybe(doc, "model", "", [&](const json& v, const std::string& q) { c.model = parse_model(v, q); });
  maybe(doc, "drive", "", [&](const json& v, const std::string& q) { c.drive = parse_drive(v, q); });
  maybe(doc, "flavor", "", [&](const json& v, const std::string& q) {
    const std::string f = text(v, q);
    if (f == "fm") {
      c.flavor = ExpansionFlavor::kFloquetMagnus;
    } else if (f == "vanvleck") {
      c.flavor = ExpansionFlavor::kVanVleck;
    } else {
      config_error(q, "expected 'fm' or 'vanvleck'");
    }
  });
  maybe(doc, "orders", "", [&](const json& v, const std::string& q) {
    if (!v.is_array() || v.empty()) config_error(q, "expected a non-empty array");
    c.orders.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int o = integer(v[i], q + "[" + std::to_string(i) + "]");
      if (o < 0 || o > 3) config_error(q, "orders must lie in 0..3");
      c.orders.push_back(o);
    }
    std::sort(c.orders.begin(), c.orders.end());
    if (std::adjacent_find(c.orders.begin(), c.orders.end()) != c.orders.end()) {
      config_error(q, "duplicate order");
    }
  });
  maybe(doc, "harmonic_cutoff", "", [&](const json& v, const std::string& q) {
    c.harmonic_cutoff = integer(v, q);
    if (c.harmonic_cutoff < 1) config_error(q, "must be >= 1");
  });
  maybe(doc, "tolerances", "", [&](const json& v, const std::string& q) {
    allow_keys(v, q, {"psd", "herm", "block"});
    maybe(v, "psd", q, [&](const json& x, const std::string& p) {
      c.tol_psd = number(x, p);
      if (*c.tol_psd < 0.0) config_error(p, "must be >= 0");
    });
    maybe(v, "herm", q, [&](const json& x, const std::string& p) { c.tol_herm = number(x, p); });
    maybe(v, "block", q, [&](const json& x, const std::string& p) { c.tol_block = number(x, p); });
  });
  maybe(doc, "weight_limit", "", [&](const json& v, const std::string& q) {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s == "full") {
        c.force_full = true;
      } else if (s != "auto") {
        config_error(q, "expected 'auto', 'full' or an integer >= 2");
      }
    } else {
      c.weight_limit = integer(v, q);
      if (*c.weight_limit < 2) config_error(q, "must be >= 2");
    }
  });
  maybe(doc, "scan", "", [&](const json& v, const std::string& q) { c.scan = parse_grid(v, q, true); });
  maybe(doc, "fit", "", [&](const json& v, const std::string& q) { c.fit = parse_grid(v, q, false); });
  maybe(doc, "compare", "", [&](const json& v, const std::string& q) {
    allow_keys(v, q, {"tau", "initial_state", "m_max"});
    CompareSpec s;
    if (!v.contains("tau")) config_error(join(q, "tau"), "missing");
    s.tau = parse_grid(v["tau"], join(q, "tau"), false);
    s.tau.param = "tau";
    maybe(v, "initial_state", q, [&](const json& x, const std::string& p) {
      s.initial_state = text(x, p);
      if (s.initial_state != "up" && s.initial_state != "down" && s.initial_state != "plus" &&
          s.initial_state != "mixed") {
        config_error(p, "expected up, down, plus or mixed");
      }
    });
    maybe(v, "m_max", q, [&](const json& x, const std::string& p) {
      s.m_max = integer(x, p);
      if (s.m_max < 0) config_error(p, "must be >= 0");
    });
    c.compare = s;
  });
  maybe(doc, "output", "", [&](const json& v, const std::string& q) { c.output = text(v, q); });

  if (c.flavor == ExpansionFlavor::kVanVleck && c.orders.back() > 1) {
    config_error("orders", "the van Vleck flavor provides orders 0 and 1");
  }
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, "config", path + ": " + e.what());
  }
  return parse_config(doc);
}

PiecewiseLiouvillian build_drive(const AnalysisConfig& config) {
  if (config.model) return build_model(*config.model);
  if (!config.drive) throw Error(ErrorCode::kConfig, "config", "no drive configured");
  const CustomDrive& cd = *config.drive;
  const int d = 1 << cd.num_sites;
  std::vector<LindbladSegment> segs;
  for (const auto& s : cd.segments) {
    std::vector<HamiltonianTerm> terms;
    for (const auto& t : s.hamiltonian) {
      auto [op, sup] = assemble({t}, cd.num_sites);
      terms.push_back({std::move(op), std::move(sup)});
    }
    std::vector<Jump> jumps;
    for (const auto& j : s.jumps) {
      auto [op, sup] = assemble(j.op, cd.num_sites);
      jumps.push_back({j.rate, std::move(op), std::move(sup)});
    }
    segs.emplace_back(s.duration, d, std::move(terms), std::move(jumps));
  }
  return PiecewiseLiouvillian(cd.num_sites, std::move(segs));
}

AnalysisConfig with_param(const AnalysisConfig& config, const std::string& param, double value) {
  AnalysisConfig c = config;
  if (c.drive) {
    if (param != "time_scale") {
      config_error("scan.param", "custom drives support only 'time_scale'");
    }
    if (!(value > 0.0)) config_error("scan", "time_scale must be > 0");
    for (auto& s : c.drive->segments) s.duration *= value;
    return c;
  }
  ModelParams& p = *c.model;
  if (param == "tau") {
    p.tau = value;
  } else if (param == "h") {
    p.h = value;
  } else if (param == "gamma1") {
    p.gamma1 = value;
  } else if (param == "gamma2") {
    p.gamma2 = value;
  } else if (param == "gamma") {
    p.gamma = value;
  } else if (param == "jz") {
    p.jz = value;
  } else if (param == "jx") {
    p.jx = value;
  } else if (param == "L") {
    p.num_sites = static_cast<int>(std::lround(value));
  } else if (param == "jz_tau" || param == "jx_tau" || param == "h_tau") {
    const double coupling = param == "jz_tau" ? p.jz : (param == "jx_tau" ? p.jx : p.h);
    if (coupling == 0.0) config_error("scan.param", param + " needs a nonzero coupling");
    p.tau = value / std::abs(coupling);
  } else if (param == "tau_over_tau_max") {
    if (p.name != ModelName::kB) config_error("scan.param", "tau_over_tau_max is defined for model B");
    p.tau = value * model_b_tau_max(p.gamma1, p.gamma2);
  } else {
    config_error("scan.param", "unknown parameter '" + param + "'");
  }
  try {
    validate(p);
  } catch (const Error& e) {
    config_error("scan", param + " = " + format_double(value) + ": " + e.what());
  }
  return c;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace floqlind::cli
