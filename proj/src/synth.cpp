#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "asn/ingest.hpp"
#include "asn/stats.hpp"

namespace asn {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(Errc::invalid_config, what);
}

// Uniform draws in the open interval (0, 1) from the raw 64-bit engine
// output, so every downstream transform is independent of the standard
// library's distribution implementations.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t discipline, std::uint64_t channel) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(discipline),
                      static_cast<std::uint32_t>(channel)};
    engine_.seed(seq);
  }

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    static const boost::math::normal standard;
    return boost::math::quantile(standard, uniform());
  }

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return std::min(hi, lo + static_cast<int>(std::floor(uniform() * span)));
  }

 private:
  std::mt19937_64 engine_;
};

double poisson_quantile(double mean, double p) {
  // Smallest k with P(X <= k) >= p.
  double pmf = std::exp(-mean);
  double cdf = pmf;
  int k = 0;
  const int cap = static_cast<int>(mean + 40.0 * std::sqrt(mean) + 100.0);
  while (cdf < p && k < cap) {
    ++k;
    pmf *= mean / k;
    cdf += pmf;
  }
  return k;
}

double component_value(const ComponentDistribution& d, double u, double scale) {
  if (u < d.zero_probability) return 0.0;
  double v = (u - d.zero_probability) / (1.0 - d.zero_probability);
  v = std::clamp(v, 1e-12, 1.0 - 1e-12);
  double x = 0.0;
  switch (d.family) {
    case DistributionFamily::lognormal:
      x = std::exp(d.a + d.b * boost::math::quantile(boost::math::normal(), v));
      break;
    case DistributionFamily::gamma:
      x = boost::math::quantile(boost::math::gamma_distribution<>(d.a, d.b), v);
      break;
    case DistributionFamily::exponential:
      x = -std::log1p(-v) / d.a;
      break;
    case DistributionFamily::uniform:
      x = d.a + v * (d.b - d.a);
      break;
    case DistributionFamily::poisson:
      x = poisson_quantile(d.a, v);
      break;
  }
  x *= scale;
  if (d.integer) x = std::floor(x);
  return std::max(0.0, x);
}

IndicatorVector draw_vector(Stream& rng, const SynthConfig& c,
                            IndicatorKind kind, double scale) {
  const bool bib = kind == IndicatorKind::bibliometric;
  const auto& comps = bib ? c.bibliometric : c.non_bibliometric;
  const double rho = bib ? c.bibliometric_correlation
                         : c.non_bibliometric_correlation;
  const double rest = std::sqrt(1.0 - rho * rho);
  static const boost::math::normal standard;

  const double common = rng.normal();
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double z = rho * common + rest * rng.normal();
    const double u = boost::math::cdf(standard, z);
    out[i] = component_value(comps[i], u, scale);
  }
  return IndicatorVector{out[0], out[1], out[2], kind};
}

// Strictly increasing in every indicator, so thresholding it is a
// monotone decision.
double merit(const IndicatorVector& v, const MedianSet& m) {
  return v.ind1 / (m.m1 + 1.0) + v.ind2 / (m.m2 + 1.0) + v.ind3 / (m.m3 + 1.0);
}

void decide(std::vector<ApplicationRecord>& group, const MedianSet& m,
            DecisionModel model, double qualify_fraction) {
  std::vector<bool> eligible(group.size(), true);
  if (model == DecisionModel::strict_median) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      eligible[i] = classify(group[i].indicators, m) == MedianClass::over_median;
    }
  }
  std::vector<double> scores;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (eligible[i]) scores.push_back(merit(group[i].indicators, m));
  }
  if (scores.empty()) {
    for (auto& a : group) a.qualified = false;
    return;
  }
  std::sort(scores.begin(), scores.end());
  const double cutoff = interpolated_quantile(scores, 1.0 - qualify_fraction);
  for (std::size_t i = 0; i < group.size(); ++i) {
    group[i].qualified =
        eligible[i] && merit(group[i].indicators, m) >= cutoff;
  }
}

DecisionModel parse_model(const std::string& name) {
  if (name == "strict-median") return DecisionModel::strict_median;
  if (name == "relaxed") return DecisionModel::relaxed;
  if (name == "noisy-threshold") return DecisionModel::noisy_threshold;
  bad_config("unknown decision model '" + name + "'");
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    bad_config(std::string("missing numeric parameter '") + key + "'");
  }
  return j.at(key).get<double>();
}

ComponentDistribution parse_component(const json& j) {
  ComponentDistribution d;
  const auto family = j.value("family", std::string());
  if (family == "lognormal") {
    d.family = DistributionFamily::lognormal;
    d.a = number(j, "mu");
    d.b = number(j, "sigma");
  } else if (family == "gamma") {
    d.family = DistributionFamily::gamma;
    d.a = number(j, "shape");
    d.b = number(j, "scale");
  } else if (family == "exponential") {
    d.family = DistributionFamily::exponential;
    d.a = number(j, "rate");
  } else if (family == "uniform") {
    d.family = DistributionFamily::uniform;
    d.a = number(j, "low");
    d.b = number(j, "high");
  } else if (family == "poisson") {
    d.family = DistributionFamily::poisson;
    d.a = number(j, "mean");
  } else {
    bad_config("unknown distribution family '" + family + "'");
  }
  d.zero_probability = j.value("zero_probability", 0.0);
  d.integer = j.value("integer", false);
  return d;
}

void check_component(const ComponentDistribution& d, const std::string& where) {
  auto fail = [&](const char* what) { bad_config(where + ": " + what); };
  switch (d.family) {
    case DistributionFamily::lognormal:
      if (!(d.b > 0.0) || !std::isfinite(d.a)) fail("lognormal needs sigma > 0");
      break;
    case DistributionFamily::gamma:
      if (!(d.a > 0.0) || !(d.b > 0.0)) fail("gamma needs shape, scale > 0");
      break;
    case DistributionFamily::exponential:
      if (!(d.a > 0.0)) fail("exponential needs rate > 0");
      break;
    case DistributionFamily::uniform:
      if (!(d.a >= 0.0) || !(d.b > d.a)) fail("uniform needs 0 <= low < high");
      break;
    case DistributionFamily::poisson:
      if (!(d.a > 0.0) || d.a > 1e6) fail("poisson needs 0 < mean <= 1e6");
      break;
  }
  if (!(d.zero_probability >= 0.0 && d.zero_probability < 1.0)) {
    fail("zero_probability must lie in [0, 1)");
  }
}

std::array<ComponentDistribution, 3> default_bibliometric() {
  return {ComponentDistribution{DistributionFamily::lognormal, 2.5, 0.6, 0.0, false},
          ComponentDistribution{DistributionFamily::lognormal, 3.5, 0.9, 0.0, false},
          ComponentDistribution{DistributionFamily::gamma, 4.0, 2.0, 0.0, true}};
}

std::array<ComponentDistribution, 3> default_non_bibliometric() {
  return {ComponentDistribution{DistributionFamily::poisson, 1.2, 1.0, 0.2, false},
          ComponentDistribution{DistributionFamily::lognormal, 2.5, 0.6, 0.0, false},
          ComponentDistribution{DistributionFamily::poisson, 1.5, 1.0, 0.3, false}};
}

}  // namespace

void validate_config(const SynthConfig& c) {
  if (c.disciplines.empty()) bad_config("no disciplines configured");
  for (const auto* rc : {&c.full_applicants, &c.associate_applicants}) {
    if (rc->min < 0 || rc->max < rc->min) {
      bad_config("applicant counts need 0 <= min <= max");
    }
  }
  for (const auto& [code, counts] : c.overrides) {
    if (counts.first < 0 || counts.second < 0) {
      bad_config("negative applicant override for " + code);
    }
  }
  if (c.professors_per_median < 1) bad_config("professors_per_median must be >= 1");
  for (double s : {c.professor_scale, c.full_scale, c.associate_scale}) {
    if (!(s > 0.0) || !std::isfinite(s)) bad_config("scales must be positive");
  }
  for (double r : {c.bibliometric_correlation, c.non_bibliometric_correlation}) {
    if (!(r >= 0.0 && r <= 1.0)) bad_config("correlations must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    check_component(c.bibliometric[i], "bibliometric[" + std::to_string(i) + "]");
    check_component(c.non_bibliometric[i],
                    "non_bibliometric[" + std::to_string(i) + "]");
  }
  if (!(c.qualify_fraction > 0.0 && c.qualify_fraction <= 1.0)) {
    bad_config("qualify_fraction must lie in (0, 1]");
  }
  if (!(c.epsilon >= 0.0 && c.epsilon <= 1.0)) {
    bad_config("epsilon must lie in [0, 1]");
  }
  if (c.noise_base == DecisionModel::noisy_threshold) {
    bad_config("noisy-threshold needs a deterministic base model");
  }
}

SynthConfig parse_synth_config(std::istream& in,
                               const std::filesystem::path& base_dir) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad_config(std::string("malformed JSON: ") + e.what());
  }
  SynthConfig c;
  c.bibliometric = default_bibliometric();
  c.non_bibliometric = default_non_bibliometric();
  try {
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("registry")) {
      std::filesystem::path p = j.at("registry").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      std::ifstream reg(p, std::ios::binary);
      if (!reg) bad_config("cannot open registry '" + p.string() + "'");
      auto parsed = parse_registry(reg, p.string());
      if (has_errors(parsed.diagnostics)) {
        bad_config("registry '" + p.string() + "' has errors: " +
                   parsed.diagnostics.front().to_string());
      }
      c.disciplines = std::move(parsed.records);
    }
    if (j.contains("disciplines")) {
      for (const auto& d : j.at("disciplines")) {
        DisciplineRegistryEntry e;
        e.discipline = DisciplineId::parse(d.at("code").get<std::string>());
        e.area_acronym = std::string(area_acronym(e.discipline.area));
        e.kind = d.contains("kind")
                     ? parse_kind_code(d.at("kind").get<std::string>())
                     : default_kind(e.discipline);
        e.name = d.value("name", std::string());
        c.disciplines.push_back(std::move(e));
      }
    }
    if (j.contains("applicants")) {
      const auto& a = j.at("applicants");
      auto counts = [](const json& r, RoleCounts dflt) {
        return RoleCounts{r.value("min", dflt.min), r.value("max", dflt.max)};
      };
      if (a.contains("full")) c.full_applicants = counts(a.at("full"), c.full_applicants);
      if (a.contains("associate")) {
        c.associate_applicants = counts(a.at("associate"), c.associate_applicants);
      }
    }
    if (j.contains("overrides")) {
      for (const auto& [code, v] : j.at("overrides").items()) {
        c.overrides[DisciplineId::parse(code).code()] = {
            v.at("full").get<int>(), v.at("associate").get<int>()};
      }
    }
    c.professors_per_median = j.value("professors_per_median", c.professors_per_median);
    c.professor_scale = j.value("professor_scale", c.professor_scale);
    if (j.contains("role_scale")) {
      c.full_scale = j.at("role_scale").value("full", c.full_scale);
      c.associate_scale = j.at("role_scale").value("associate", c.associate_scale);
    }
    if (j.contains("indicators")) {
      const auto& ind = j.at("indicators");
      for (const auto& [key, target] :
           {std::pair{"bibliometric", &c.bibliometric},
            std::pair{"non_bibliometric", &c.non_bibliometric}}) {
        if (!ind.contains(key)) continue;
        const auto& arr = ind.at(key);
        if (!arr.is_array() || arr.size() != 3) {
          bad_config(std::string(key) + " needs exactly three components");
        }
        for (std::size_t i = 0; i < 3; ++i) (*target)[i] = parse_component(arr[i]);
      }
    }
    if (j.contains("correlation")) {
      const auto& r = j.at("correlation");
      c.bibliometric_correlation = r.value("bibliometric", c.bibliometric_correlation);
      c.non_bibliometric_correlation =
          r.value("non_bibliometric", c.non_bibliometric_correlation);
    }
    if (j.contains("decision")) {
      const auto& d = j.at("decision");
      c.decision = parse_model(d.value("model", std::string("strict-median")));
      if (d.contains("base")) c.noise_base = parse_model(d.at("base").get<std::string>());
      c.qualify_fraction = d.value("qualify_fraction", c.qualify_fraction);
      c.epsilon = d.value("epsilon", c.epsilon);
    }
  } catch (const json::exception& e) {
    bad_config(std::string("bad configuration value: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_config) throw;
    bad_config(e.what());
  }
  validate_config(c);
  return c;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  return parse_synth_config(in, path.parent_path());
}

RoundDataset synthesize_round(const SynthConfig& c, std::uint64_t seed) {
  validate_config(c);
  RoundDataset out;
  out.registry = c.disciplines;

  std::size_t serial = 0;
  for (std::size_t d = 0; d < c.disciplines.size(); ++d) {
    const auto& entry = c.disciplines[d];
    const DisciplineId discipline = entry.discipline.base();
    Stream population(seed, d, 0);
    Stream decisions(seed, d, 1);

    std::pair<int, int> counts;
    if (const auto it = c.overrides.find(discipline.code()); it != c.overrides.end()) {
      counts = it->second;
    } else {
      counts.first = population.uniform_int(c.full_applicants.min, c.full_applicants.max);
      counts.second = population.uniform_int(c.associate_applicants.min,
                                             c.associate_applicants.max);
    }

    for (Role role : kRoles) {
      const double scale = role == Role::full ? c.full_scale : c.associate_scale;

      std::array<std::vector<double>, 3> tenured;
      for (int k = 0; k < c.professors_per_median; ++k) {
        const auto v = draw_vector(population, c, entry.kind, scale * c.professor_scale);
        for (std::size_t i = 0; i < 3; ++i) tenured[i].push_back(v[i]);
      }
      MedianSet m{discipline, role, compute_median(tenured[0]),
                  compute_median(tenured[1]), compute_median(tenured[2]),
                  entry.kind};
      out.medians.push_back(m);

      const int n = role == Role::full ? counts.first : counts.second;
      std::vector<ApplicationRecord> group;
      group.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        ++serial;
        const std::string num = std::to_string(serial);
        ApplicationRecord a;
        a.applicant_id = "SYN" + std::string(7 - std::min<std::size_t>(7, num.size()), '0') + num;
        a.last_name = "Surname" + num;
        a.first_name = "Given" + num;
        a.discipline = discipline;
        a.role = role;
        a.indicators = draw_vector(population, c, entry.kind, scale);
        group.push_back(std::move(a));
      }

      const DecisionModel base =
          c.decision == DecisionModel::noisy_threshold ? c.noise_base : c.decision;
      decide(group, m, base, c.qualify_fraction);
      if (c.decision == DecisionModel::noisy_threshold) {
        for (auto& a : group) {
          if (decisions.uniform() < c.epsilon) a.qualified = !a.qualified;
        }
      }
      for (auto& a : group) out.applications.push_back(std::move(a));
    }
  }
  return out;
}

}  // namespace asn
