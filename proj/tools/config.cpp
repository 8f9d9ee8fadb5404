#include "config.hpp"

#include <fstream>
#include <memory>

#include "dunkl/error.hpp"

namespace dunkl::app {

using nlohmann::json;

json default_document() {
  return json{
      {"model", {{"mu1", 0.0}, {"mu2", 0.0}, {"mu3", 0.0}, {"a", 0.0}, {"b", 0.0}, {"hbar", 1.0}}},
      {"sector", {{"e1", 1}, {"e2", 1}, {"e3", 1}}},
      {"branch", "principal"},
      {"quantum_numbers", {{"n", 0}, {"n_theta", 0}, {"n_phi", 0}}},
      {"profile",
       {{"mass", {{"kind", "constant"}, {"m0", 1.0}, {"gamma", 0.0}, {"table", ""}}},
        {"frequency",
         {{"kind", "constant"},
          {"omega0", 1.0},
          {"slope", 0.0},
          {"amplitude", 0.0},
          {"nu", 0.0},
          {"phase", 0.0},
          {"omega_sq", 1.0},
          {"table", ""}}}}},
      {"spectrum", {{"n_max", 2}, {"n_theta_max", 2}, {"n_phi_max", 2}, {"all_sectors", true}}},
      {"ep", {{"rho0", nullptr}, {"rho_dot0", 0.0}, {"t_end", 10.0}, {"step", 1e-3}, {"output_every", 10}}},
      {"modes", {{"angular_nodes", 64}, {"radial_nodes", 400}}},
      {"evolve",
       {{"t_end", 5.0},
        {"snapshot_times", json::array({0.0})},
        {"snapshot_format", "csv"},
        {"snapshot_radial_nodes", 200},
        {"snapshot_r_max", 0.0},
        {"snapshot_theta_nodes", 16},
        {"snapshot_phi_nodes", 16},
        {"propagate", true},
        {"propagator_nodes", 4000},
        {"propagator_r_max", 12.0},
        {"propagator_step", 1e-4},
        {"observe_every", 100}}},
      {"verify",
       {{"nodes", 2000},
        {"commutator_nodes", 4000},
        {"random_fields", 20},
        {"seed", 1234},
        {"lambda_perturbation", 0.0},
        {"t_end", 2.0},
        {"propagator_nodes", 2000},
        {"propagator_step", 1e-3}}},
  };
}

namespace {

const char* kind_name(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  return "object";
}

// Does `value` fit where the defaults hold `def`?
bool compatible(const json& def, const json& value, const std::string& key) {
  if (def.is_null()) return value.is_null() || value.is_number();
  if (def.is_number_integer()) return value.is_number_integer();
  if (def.is_number()) return value.is_number();
  if (def.is_boolean()) return value.is_boolean();
  if (def.is_string()) return value.is_string();
  if (def.is_array()) {
    if (!value.is_array()) return false;
    for (const auto& x : value) {
      if (!x.is_number()) throw ConfigError("'" + key + "' must hold numbers only");
    }
    return true;
  }
  return value.is_object();
}

void merge(json& into, const json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) {
    if (it->is_object() && into[it.key()].is_object()) {
      merge(into[it.key()], *it);
    } else {
      into[it.key()] = *it;
    }
  }
}

double number(const json& doc, const char* a, const char* b) { return doc.at(a).at(b).get<double>(); }

int integer(const json& doc, const char* a, const char* b, int lo) {
  const auto v = doc.at(a).at(b).get<long long>();
  if (v < lo || v > 1'000'000'000) {
    throw ConfigError(std::string(a) + "." + b + " must be an integer >= " + std::to_string(lo));
  }
  return static_cast<int>(v);
}

double positive(const json& doc, const char* a, const char* b) {
  const double v = number(doc, a, b);
  if (!(v > 0.0)) throw ConfigError(std::string(a) + "." + b + " must be positive");
  return v;
}

std::shared_ptr<const TabulatedProfile> table(const json& node, const std::string& key,
                                              const std::filesystem::path& base) {
  const std::string name = node.at("table").get<std::string>();
  if (name.empty()) throw ConfigError(key + ".table must name a CSV file for a tabulated profile");
  std::filesystem::path p(name);
  if (p.is_relative()) p = base / p;
  return std::make_shared<const TabulatedProfile>(TabulatedProfile::from_csv(p));
}

MassProfile mass_profile(const json& node, const std::filesystem::path& base) {
  MassProfile m;
  const std::string kind = node.at("kind").get<std::string>();
  m.m0 = node.at("m0").get<double>();
  m.gamma = node.at("gamma").get<double>();
  if (kind == "constant") {
    m.kind = MassKind::Constant;
  } else if (kind == "exponential") {
    m.kind = MassKind::Exponential;
  } else if (kind == "tabulated") {
    m.kind = MassKind::Tabulated;
    m.table = table(node, "profile.mass", base);
  } else {
    throw ConfigError("profile.mass.kind must be constant, exponential or tabulated, got '" + kind + "'");
  }
  if (m.kind != MassKind::Tabulated && !(m.m0 > 0.0)) throw ConfigError("profile.mass.m0 must be positive");
  return m;
}

FrequencyProfile frequency_profile(const json& node, const std::filesystem::path& base) {
  FrequencyProfile f;
  const std::string kind = node.at("kind").get<std::string>();
  f.omega0 = node.at("omega0").get<double>();
  f.slope = node.at("slope").get<double>();
  f.amplitude = node.at("amplitude").get<double>();
  f.nu = node.at("nu").get<double>();
  f.phase = node.at("phase").get<double>();
  f.omega_sq = node.at("omega_sq").get<double>();
  if (kind == "constant") {
    f.kind = FrequencyKind::Constant;
  } else if (kind == "linear_ramp") {
    f.kind = FrequencyKind::LinearRamp;
  } else if (kind == "sinusoidal") {
    f.kind = FrequencyKind::Sinusoidal;
  } else if (kind == "omega_squared") {
    f.kind = FrequencyKind::OmegaSquared;
  } else if (kind == "tabulated") {
    f.kind = FrequencyKind::Tabulated;
    f.table = table(node, "profile.frequency", base);
  } else {
    throw ConfigError(
        "profile.frequency.kind must be constant, linear_ramp, sinusoidal, omega_squared or "
        "tabulated, got '" + kind + "'");
  }
  return f;
}

}  // namespace

void check_schema(const json& doc, const json& schema, const std::string& prefix) {
  if (!doc.is_object()) throw ConfigError("configuration " + (prefix.empty() ? "root" : "'" + prefix + "'") + " must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!schema.contains(it.key())) throw ConfigError("unknown configuration key '" + key + "'");
    const json& def = schema.at(it.key());
    if (!compatible(def, *it, key)) {
      throw ConfigError("configuration key '" + key + "' expects " + kind_name(def) + ", got " +
                        kind_name(*it));
    }
    if (def.is_object()) check_schema(*it, def, key);
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form KEY=VALUE");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part)) {
      throw ConfigError("unknown configuration key '" + key + "' in override");
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (node->is_object()) throw ConfigError("override '" + key + "' must name a scalar field");
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  *node = value;
}

RunConfig extract(const json& doc, const std::filesystem::path& base) {
  RunConfig c;
  c.model.mu1 = number(doc, "model", "mu1");
  c.model.mu2 = number(doc, "model", "mu2");
  c.model.mu3 = number(doc, "model", "mu3");
  c.model.a = number(doc, "model", "a");
  c.model.b = number(doc, "model", "b");
  c.model.hbar = number(doc, "model", "hbar");
  c.model.validate();
  c.sector.e1 = parity_from_int(doc.at("sector").at("e1").get<int>());
  c.sector.e2 = parity_from_int(doc.at("sector").at("e2").get<int>());
  c.sector.e3 = parity_from_int(doc.at("sector").at("e3").get<int>());
  c.branch = azimuthal_branch_from_string(doc.at("branch").get<std::string>());
  c.quantum_numbers.n = integer(doc, "quantum_numbers", "n", 0);
  c.quantum_numbers.n_theta = integer(doc, "quantum_numbers", "n_theta", 0);
  c.quantum_numbers.n_phi = integer(doc, "quantum_numbers", "n_phi", 0);

  c.profile.mass = mass_profile(doc.at("profile").at("mass"), base);
  c.profile.frequency = frequency_profile(doc.at("profile").at("frequency"), base);

  c.spectrum.n_max = integer(doc, "spectrum", "n_max", 0);
  c.spectrum.n_theta_max = integer(doc, "spectrum", "n_theta_max", 0);
  c.spectrum.n_phi_max = integer(doc, "spectrum", "n_phi_max", 0);
  c.spectrum.all_sectors = doc.at("spectrum").at("all_sectors").get<bool>();

  const json& ep = doc.at("ep");
  if (!ep.at("rho0").is_null()) {
    c.ep.rho0 = ep.at("rho0").get<double>();
    if (!(*c.ep.rho0 > 0.0)) throw ConfigError("ep.rho0 must be positive");
  }
  c.ep.rho_dot0 = number(doc, "ep", "rho_dot0");
  c.ep.t_end = number(doc, "ep", "t_end");
  c.ep.step = positive(doc, "ep", "step");
  c.ep.output_every = integer(doc, "ep", "output_every", 1);

  c.modes.angular_nodes = integer(doc, "modes", "angular_nodes", 4);
  c.modes.radial_nodes = integer(doc, "modes", "radial_nodes", 8);

  const json& ev = doc.at("evolve");
  c.evolve.t_end = number(doc, "evolve", "t_end");
  if (!(c.evolve.t_end >= 0.0)) throw ConfigError("evolve.t_end must be nonnegative");
  for (const auto& t : ev.at("snapshot_times")) {
    const double v = t.get<double>();
    if (!(v >= 0.0 && v <= c.evolve.t_end)) {
      throw ConfigError("evolve.snapshot_times must lie in [0, evolve.t_end]");
    }
    c.evolve.snapshot_times.push_back(v);
  }
  c.evolve.snapshot_format = ev.at("snapshot_format").get<std::string>();
  if (c.evolve.snapshot_format != "csv" && c.evolve.snapshot_format != "binary" &&
      c.evolve.snapshot_format != "both") {
    throw ConfigError("evolve.snapshot_format must be csv, binary or both");
  }
  c.evolve.snapshot_radial_nodes = integer(doc, "evolve", "snapshot_radial_nodes", 8);
  c.evolve.snapshot_r_max = number(doc, "evolve", "snapshot_r_max");
  if (c.evolve.snapshot_r_max < 0.0) throw ConfigError("evolve.snapshot_r_max must be nonnegative");
  c.evolve.snapshot_theta_nodes = integer(doc, "evolve", "snapshot_theta_nodes", 1);
  c.evolve.snapshot_phi_nodes = integer(doc, "evolve", "snapshot_phi_nodes", 1);
  c.evolve.propagate = ev.at("propagate").get<bool>();
  c.evolve.propagator_nodes = integer(doc, "evolve", "propagator_nodes", 8);
  c.evolve.propagator_r_max = positive(doc, "evolve", "propagator_r_max");
  c.evolve.propagator_step = positive(doc, "evolve", "propagator_step");
  c.evolve.observe_every = integer(doc, "evolve", "observe_every", 1);

  c.verify.nodes = integer(doc, "verify", "nodes", 16);
  c.verify.commutator_nodes = integer(doc, "verify", "commutator_nodes", 64);
  c.verify.random_fields = integer(doc, "verify", "random_fields", 1);
  c.verify.seed = static_cast<std::uint64_t>(integer(doc, "verify", "seed", 0));
  c.verify.lambda_perturbation = number(doc, "verify", "lambda_perturbation");
  c.verify.t_end = positive(doc, "verify", "t_end");
  c.verify.propagator_nodes = integer(doc, "verify", "propagator_nodes", 16);
  c.verify.propagator_step = positive(doc, "verify", "propagator_step");
  return c;
}

ResolvedConfig resolve(const json& file_doc, const std::vector<std::string>& overrides,
                       const std::filesystem::path& base_dir) {
  const json defaults = default_document();
  check_schema(file_doc, defaults);
  ResolvedConfig out;
  out.document = defaults;
  merge(out.document, file_doc);
  for (const auto& o : overrides) apply_override(out.document, o);
  check_schema(out.document, defaults);
  out.overrides = overrides;
  out.run = extract(out.document, base_dir);
  return out;
}

ResolvedConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("configuration file " + path.string() + " is not valid JSON");
  return resolve(doc, overrides, path.parent_path());
}

}  // namespace dunkl::app
