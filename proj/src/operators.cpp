#include "pvb/operators.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double morse_frequency(const Morse& m, double mass) {
  return m.width * std::sqrt(2.0 * m.depth / mass);
}

}  // namespace

void validate(const PotentialModel& model) {
  std::visit(overloaded{
                 [](const Harmonic& h) {
                   if (!(h.omega > 0.0)) throw InvalidArgument("harmonic omega must be positive");
                 },
                 [](const Morse& m) {
                   if (!(m.depth > 0.0)) throw InvalidArgument("Morse depth D must be positive");
                   if (!(m.width > 0.0)) throw InvalidArgument("Morse width a must be positive");
                   if (!std::isfinite(m.center)) throw InvalidArgument("Morse x_e must be finite");
                 },
                 [](const QuarticDoubleWell& q) {
                   if (!(q.c4 > 0.0)) throw InvalidArgument("double-well c4 must be positive");
                   if (!std::isfinite(q.c2)) throw InvalidArgument("double-well c2 must be finite");
                 },
             },
             model);
}

std::string describe(const PotentialModel& model) {
  return std::visit(
      overloaded{
          [](const Harmonic& h) { return fmt::format("harmonic(omega={})", h.omega); },
          [](const Morse& m) {
            return fmt::format("morse(D={}, a={}, x_e={})", m.depth, m.width, m.center);
          },
          [](const QuarticDoubleWell& q) {
            return fmt::format("double-well(c2={}, c4={})", q.c2, q.c4);
          },
      },
      model);
}

double eval_potential(const PotentialModel& model, double x) {
  return std::visit(overloaded{
                        [x](const Harmonic& h) { return 0.5 * h.omega * h.omega * x * x; },
                        [x](const Morse& m) {
                          const double s = 1.0 - std::exp(-m.width * (x - m.center));
                          return m.depth * s * s;
                        },
                        [x](const QuarticDoubleWell& q) {
                          const double x2 = x * x;
                          return -q.c2 * x2 + q.c4 * x2 * x2;
                        },
                    },
                    model);
}

std::pair<double, double> default_domain(const PotentialModel& model) {
  return std::visit(overloaded{
                        [](const Harmonic&) { return std::pair{-10.0, 10.0}; },
                        [](const Morse& m) { return std::pair{m.center - 2.0, m.center + 12.0}; },
                        [](const QuarticDoubleWell&) { return std::pair{-6.0, 6.0}; },
                    },
                    model);
}

int morse_bound_state_count(const Morse& morse, double mass) {
  const double lambda = std::sqrt(2.0 * mass * morse.depth) / morse.width;
  // Strict inequality: a level sitting exactly at D is not bound.
  return static_cast<int>(std::ceil(lambda - 0.5));
}

double analytic_level(const PotentialModel& model, double mass, int n) {
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (n < 0) throw InvalidArgument("level index must be non-negative");
  return std::visit(
      overloaded{
          [&](const Harmonic& h) { return h.omega / std::sqrt(mass) * (n + 0.5); },
          [&](const Morse& m) {
            const double w0 = morse_frequency(m, mass);
            const double e = w0 * (n + 0.5);
            return e - e * e / (4.0 * m.depth);
          },
          [](const QuarticDoubleWell&) -> double {
            throw NotAvailable("no closed-form levels for the quartic double well");
          },
      },
      model);
}

std::vector<double> analytic_levels(const PotentialModel& model, double mass, int count) {
  validate(model);
  if (count < 0) throw InvalidArgument("level count must be non-negative");
  if (std::holds_alternative<QuarticDoubleWell>(model)) {
    throw NotAvailable("no closed-form levels for the quartic double well");
  }
  if (const auto* m = std::get_if<Morse>(&model)) {
    const int bound = morse_bound_state_count(*m, mass);
    if (count > bound) {
      throw InvalidArgument(
          fmt::format("requested {} Morse levels but only {} are bound", count, bound));
    }
  }
  std::vector<double> levels(count);
  for (int n = 0; n < count; ++n) levels[n] = analytic_level(model, mass, n);
  return levels;
}

HamiltonianMatrix build_hamiltonian(const DvrBasis& dvr, const PotentialModel& model, double mass) {
  validate(model);
  HamiltonianMatrix h;
  h.matrix = kinetic_matrix(dvr, mass);
  h.family = dvr.family;
  h.a = dvr.a;
  h.b = dvr.b;
  h.mass = mass;
  h.potential.resize(dvr.size());
  for (int m = 0; m < dvr.size(); ++m) {
    h.potential[m] = eval_potential(model, dvr.points[m]);
    h.matrix(m, m) += h.potential[m];
  }
  return h;
}

}  // namespace pvb
