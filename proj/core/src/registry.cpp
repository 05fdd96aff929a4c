#include "lmsr/registry.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "lmsr/errors.hpp"
#include "lmsr/gentree.hpp"
#include "lmsr/noise.hpp"

namespace lmsr {

namespace {

using std::numbers::pi;

// Base dimensions: m, s, kg, T, V.
UnitVector U(std::int64_t m, std::int64_t s, std::int64_t kg, std::int64_t t, std::int64_t v) {
  return UnitVector{m, s, kg, t, v};
}

const UnitVector kNone = U(0, 0, 0, 0, 0);
const UnitVector kLength = U(1, 0, 0, 0, 0);
const UnitVector kArea = U(2, 0, 0, 0, 0);
const UnitVector kVolume = U(3, 0, 0, 0, 0);
const UnitVector kMass = U(0, 0, 1, 0, 0);
const UnitVector kVelocity = U(1, -1, 0, 0, 0);
const UnitVector kFrequency = U(0, -1, 0, 0, 0);
const UnitVector kForce = U(1, -2, 1, 0, 0);
const UnitVector kEnergy = U(2, -2, 1, 0, 0);
const UnitVector kPower = U(2, -3, 1, 0, 0);
const UnitVector kPressure = U(-1, -2, 1, 0, 0);
const UnitVector kCharge = U(2, -2, 1, 0, -1);
const UnitVector kPermittivity = U(1, -2, 1, 0, -2);
const UnitVector kCapacitance = U(2, -2, 1, 0, -2);
const UnitVector kVolt = U(0, 0, 0, 0, 1);
const UnitVector kField = U(-1, 0, 0, 0, 1);
const UnitVector kMagnetic = U(-2, 1, 0, 0, 1);
const UnitVector kMoment = U(4, -3, 1, 0, -1);
const UnitVector kTemperature = U(0, 0, 0, 1, 0);
const UnitVector kBoltzmann = U(2, -2, 1, -1, 0);
const UnitVector kConductivity = U(1, -3, 1, -1, 0);
const UnitVector kGravitation = U(3, -2, -1, 0, 0);

std::vector<ProblemSpec> build_registry() {
  std::vector<ProblemSpec> r;
  auto add = [&](ProblemSpec p) { r.push_back(std::move(p)); };

  add({"I.6.20a", "f = exp(-theta^2/2)/sqrt(2*pi)",
       {{"theta", kNone, 1, 3}},
       kNone,
       [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2) / std::sqrt(2 * pi); },
       "(* (exp L) L)", {"-0.5*theta^2", "0.3989422804014327"}, 2, false});
  add({"I.9.18", "F = G*m1*m2/((x2-x1)^2+(y2-y1)^2+(z2-z1)^2)",
       {{"m1", kMass, 1, 2},
        {"m2", kMass, 1, 2},
        {"G", kGravitation, 1, 2},
        {"x1", kLength, 3, 4},
        {"x2", kLength, 1, 2},
        {"y1", kLength, 3, 4},
        {"y2", kLength, 1, 2},
        {"z1", kLength, 3, 4},
        {"z2", kLength, 1, 2}},
       kForce,
       [](std::span<const double> x) {
         const double dx = x[4] - x[3];
         const double dy = x[6] - x[5];
         const double dz = x[8] - x[7];
         return x[2] * x[0] * x[1] / (dx * dx + dy * dy + dz * dz);
       },
       "", {}, 0, true});
  add({"I.10.7", "m = m_0/sqrt(1-v^2/c^2)",
       {{"m_0", kMass, 1, 5}, {"v", kVelocity, 1, 2}, {"c", kVelocity, 3, 10}},
       kMass,
       [](std::span<const double> x) { return x[0] / std::sqrt(1 - x[1] * x[1] / (x[2] * x[2])); },
       "(/ L (sqrt (+ L L)))", {"m_0", "1", "-1*v^2*c^-2"}, 1, false});
  add({"I.12.2", "F = q1*q2/(4*pi*epsilon*r^2)",
       {{"q1", kCharge, 1, 5}, {"q2", kCharge, 1, 5}, {"epsilon", kPermittivity, 1, 5}, {"r", kLength, 1, 5}},
       kForce,
       [](std::span<const double> x) { return x[0] * x[1] / (4 * pi * x[2] * x[3] * x[3]); },
       "L", {"0.07957747154594767*q1*q2*epsilon^-1*r^-2"}, 1, false});
  add({"I.12.4", "Ef = q1/(4*pi*epsilon*r^2)",
       {{"q1", kCharge, 1, 5}, {"epsilon", kPermittivity, 1, 5}, {"r", kLength, 1, 5}},
       kField,
       [](std::span<const double> x) { return x[0] / (4 * pi * x[1] * x[2] * x[2]); },
       "L", {"0.07957747154594767*q1*epsilon^-1*r^-2"}, 1, false});
  add({"I.13.4", "K = 1/2*m*(v^2+u^2+w^2)",
       {{"m", kMass, 1, 5}, {"v", kVelocity, 1, 5}, {"u", kVelocity, 1, 5}, {"w", kVelocity, 1, 5}},
       kEnergy,
       [](std::span<const double> x) { return 0.5 * x[0] * (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]); },
       "(* (+ (+ L L) L) L)", {"v^2", "u^2", "w^2", "0.5*m"}, 1, false});
  add({"I.13.12", "U = G*m1*m2*(1/r2-1/r1)",
       {{"m1", kMass, 1, 5}, {"m2", kMass, 1, 5}, {"r1", kLength, 1, 5}, {"r2", kLength, 1, 5},
        {"G", kGravitation, 1, 5}},
       kEnergy,
       [](std::span<const double> x) { return x[4] * x[0] * x[1] * (1 / x[3] - 1 / x[2]); },
       "(+ L L)", {"m1*m2*r2^-1*G", "-1*m1*m2*r1^-1*G"}, 1, false});
  add({"I.18.4", "r = (m1*r1+m2*r2)/(m1+m2)",
       {{"m1", kMass, 1, 5}, {"m2", kMass, 1, 5}, {"r1", kLength, 1, 5}, {"r2", kLength, 1, 5}},
       kLength,
       [](std::span<const double> x) { return (x[0] * x[2] + x[1] * x[3]) / (x[0] + x[1]); },
       "(/ (+ L L) (+ L L))", {"m1*r1", "m2*r2", "m1", "m2"}, 0, false});
  add({"I.24.6", "E = 1/4*m*(omega^2+omega_0^2)*x^2",
       {{"m", kMass, 1, 5}, {"omega", kFrequency, 1, 5}, {"omega_0", kFrequency, 1, 5}, {"x", kLength, 1, 5}},
       kEnergy,
       [](std::span<const double> x) { return 0.25 * x[0] * (x[1] * x[1] + x[2] * x[2]) * x[3] * x[3]; },
       "(/ L (/ L (+ L L)))", {"m*x^2", "4", "omega^2", "omega_0^2"}, 1, false});
  add({"I.25.13", "Volt = q/C",
       {{"q", kCharge, 1, 5}, {"C", kCapacitance, 1, 5}},
       kVolt,
       [](std::span<const double> x) { return x[0] / x[1]; },
       "L", {"q*C^-1"}, 0, false});
  add({"I.27.6", "foc = 1/(1/d1+n/d2)",
       {{"d1", kLength, 1, 5}, {"d2", kLength, 1, 5}, {"n", kNone, 1, 5}},
       kLength,
       [](std::span<const double> x) { return 1 / (1 / x[0] + x[2] / x[1]); },
       "(/ L (+ L L))", {"d1*d2", "d2", "d1*n"}, 0, false});
  add({"I.34.10", "omega = omega_0/(1-v/c)",
       {{"c", kVelocity, 3, 10}, {"v", kVelocity, 1, 2}, {"omega_0", kFrequency, 1, 5}},
       kFrequency,
       [](std::span<const double> x) { return x[2] / (1 - x[1] / x[0]); },
       "(/ L (+ L L))", {"c*omega_0", "c", "-1*v"}, 1, false});
  add({"I.39.11", "E = 1/(gamma-1)*pr*V",
       {{"gamma", kNone, 2, 5}, {"pr", kPressure, 1, 5}, {"V", kVolume, 1, 5}},
       kEnergy,
       [](std::span<const double> x) { return x[1] * x[2] / (x[0] - 1); },
       "(/ L (+ L L))", {"pr*V", "gamma", "-1"}, 1, false});
  add({"I.43.43", "kappa = 1/(gamma-1)*kb*v/A",
       {{"gamma", kNone, 2, 5}, {"kb", kBoltzmann, 1, 5}, {"A", kArea, 1, 5}, {"v", kVelocity, 1, 5}},
       kConductivity,
       [](std::span<const double> x) { return x[1] * x[3] / (x[2] * (x[0] - 1)); },
       "(/ L (+ L L))", {"kb*v", "gamma*A", "-1*A"}, 1, false});
  add({"II.2.42", "P = kappa*(T2-T1)*A/d",
       {{"kappa", kConductivity, 1, 5}, {"T1", kTemperature, 1, 5}, {"T2", kTemperature, 1, 5},
        {"A", kArea, 1, 5}, {"d", kLength, 1, 5}},
       kPower,
       [](std::span<const double> x) { return x[0] * (x[2] - x[1]) * x[3] / x[4]; },
       "(+ L L)", {"kappa*T2*A*d^-1", "-1*kappa*T1*A*d^-1"}, 1, false});
  add({"II.34.11", "omega = g_*q*B/(2*m)",
       {{"g_", kNone, 1, 5}, {"q", kCharge, 1, 5}, {"B", kMagnetic, 1, 5}, {"m", kMass, 1, 5}},
       kFrequency,
       [](std::span<const double> x) { return x[0] * x[1] * x[2] / (2 * x[3]); },
       "L", {"0.5*g_*q*B*m^-1"}, 1, false});
  add({"II.37.1", "E = mom*(1+chi)*B",
       {{"mom", kMoment, 1, 5}, {"B", kMagnetic, 1, 5}, {"chi", kNone, 1, 5}},
       kEnergy,
       [](std::span<const double> x) { return x[0] * (1 + x[2]) * x[1]; },
       "(+ L L)", {"mom*B", "mom*B*chi"}, 0, false});
  add({"II.38.3", "F = Y*A*x/d",
       {{"Y", kPressure, 1, 5}, {"A", kArea, 1, 5}, {"d", kLength, 1, 5}, {"x", kLength, 1, 5}},
       kForce,
       [](std::span<const double> x) { return x[0] * x[1] * x[3] / x[2]; },
       "L", {"Y*A*d^-1*x"}, 0, false});
  return r;
}

}  // namespace

const std::vector<std::string>& registry_dimensions() {
  static const std::vector<std::string> dims{"m", "s", "kg", "T", "V"};
  return dims;
}

const std::vector<ProblemSpec>& feynman_registry() {
  static const std::vector<ProblemSpec> registry = build_registry();
  return registry;
}

const ProblemSpec& find_problem(std::string_view label) {
  for (const auto& p : feynman_registry()) {
    if (p.label == label) return p;
  }
  throw UnknownLabel(std::string(label));
}

std::vector<std::string> ProblemSpec::names() const {
  std::vector<std::string> out;
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

UnitsTable ProblemSpec::units() const {
  UnitsTable t;
  t.dimensions = registry_dimensions();
  for (const auto& v : variables) t.variables.push_back(v.unit);
  t.target = target_unit;
  return t;
}

Dataset ProblemSpec::generate(std::size_t points, std::uint64_t seed) const {
  SplitMix64 rng(seed);
  const std::size_t n = variables.size();
  std::vector<double> rows;
  std::vector<double> y;
  rows.reserve(points * n);
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t base = rows.size();
    for (const auto& v : variables) rows.push_back(rng.uniform(v.lo, v.hi));
    y.push_back(formula(std::span<const double>(rows.data() + base, n)));
  }
  return Dataset(names(), std::move(rows), std::move(y), units());
}

std::optional<CandidateModel> ProblemSpec::expected_model() const {
  if (expected_tree.empty()) return std::nullopt;
  CandidateModel model;
  model.tree = Gentree::parse(expected_tree);
  if (static_cast<std::size_t>(model.tree.leaf_count()) != expected_leaves.size()) {
    throw ConfigError("reference model of " + label + " has the wrong number of leaves");
  }
  const auto ns = names();
  for (const auto& leaf : expected_leaves) model.params.leaves.push_back(parse_leaf(leaf, ns));
  model.complexity = model.tree.node_count();
  return model;
}

LMonomial parse_leaf(std::string_view text, const std::vector<std::string>& names) {
  LMonomial leaf;
  leaf.powers.assign(names.size(), 0);
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto star = std::min(text.find('*', start), text.size());
    const std::string_view factor = text.substr(start, star - start);
    if (factor.empty()) throw ParseError("empty factor in leaf '" + std::string(text) + "'");
    const char c0 = factor.front();
    if ((c0 >= '0' && c0 <= '9') || c0 == '-' || c0 == '+' || c0 == '.') {
      double v = 0.0;
      const auto body = c0 == '+' ? factor.substr(1) : factor;
      const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc() || ptr != body.data() + body.size()) {
        throw ParseError("bad constant '" + std::string(factor) + "'");
      }
      leaf.constant = leaf.gated ? leaf.constant * v : v;
      leaf.gated = true;
    } else {
      const auto caret = factor.find('^');
      const std::string_view name = factor.substr(0, caret);
      int power = 1;
      if (caret != std::string_view::npos) {
        const auto exp = factor.substr(caret + 1);
        const auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
        if (ec != std::errc() || ptr != exp.data() + exp.size()) {
          throw ParseError("bad power in '" + std::string(factor) + "'");
        }
      }
      bool found = false;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
          leaf.powers[i] += power;
          found = true;
        }
      }
      if (!found) throw ParseError("unknown variable '" + std::string(name) + "'");
    }
    start = star + 1;
  }
  // A bare "1" is the empty monomial, not a constant.
  if (leaf.gated && leaf.constant == 1.0 && text == "1") leaf.gated = false;
  return leaf;
}

}  // namespace lmsr
