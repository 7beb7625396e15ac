#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hiervote/abstention.hpp"
#include "hiervote/analysis.hpp"
#include "hiervote/bounds.hpp"
#include "hiervote/montecarlo.hpp"
#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

namespace py = pybind11;
using namespace hiervote;

namespace {

using GroupTuple = std::tuple<std::int64_t, double, double>;  // (effective size, competence, abstention)

HeteroSystem to_system(const std::vector<GroupTuple>& groups) {
  std::vector<GroupProfile> profiles;
  for (const auto& [size, eps, alpha] : groups) profiles.emplace_back(size, Probability(eps), Probability(alpha));
  return HeteroSystem(std::move(profiles));
}

std::vector<Probability> probs(const std::vector<double>& values) { return to_probabilities(values); }

py::dict report_dict(const CompositionReport& r) {
  py::list candidates;
  for (const auto& c : r.candidates) {
    py::dict d;
    d["layers"] = c.layers;
    d["score"] = c.score;
    candidates.append(d);
  }
  py::dict d;
  d["electorate_size"] = r.electorate_size;
  d["score_kind"] = std::string(to_string(r.score_kind));
  d["argmin"] = r.argmin;
  d["min_score"] = r.min_score;
  d["tie"] = r.tie;
  d["candidates"] = candidates;
  return d;
}

py::dict estimate_dict(const SimEstimate& e) {
  py::dict d;
  d["p_hat"] = e.p_hat.value();
  d["stderr"] = e.std_error;
  d["trials"] = e.trials;
  d["seed"] = e.seed;
  return d;
}

py::tuple bound_tuple(const HoeffdingBound& b) { return py::make_tuple(b.bound.value(), b.valid); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reliability of direct and hierarchical majority voting";

  static py::exception<Error> error_type(m, "HiervoteError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), e.what());
    }
  });

  // reliability
  m.def("binomial_tail", [](std::int64_t n, double eps) { return binomial_tail(n, Probability(eps)).value(); },
        py::arg("n_voters"), py::arg("epsilon"));
  m.def("recursive_majority",
        [](std::vector<std::int64_t> layers, double eps) {
          return recursive_majority(HierarchySpec(std::move(layers)), Probability(eps)).value();
        },
        py::arg("layers"), py::arg("epsilon"));
  m.def("two_tier", [](std::int64_t k, std::int64_t l, double eps) { return two_tier(k, l, Probability(eps)).value(); },
        py::arg("k"), py::arg("l"), py::arg("epsilon"));
  m.def("multi_tier",
        [](std::vector<std::int64_t> layers, double eps) {
          return multi_tier(HierarchySpec(std::move(layers)), Probability(eps)).value();
        },
        py::arg("layers"), py::arg("epsilon"));
  m.def("sweep_compare",
        [](std::vector<std::int64_t> layers, const std::vector<double>& grid) {
          const auto sweep = sweep_compare(HierarchySpec(std::move(layers)), probs(grid));
          py::list rows;
          for (const auto& r : sweep.rows()) rows.append(py::make_tuple(r.epsilon, r.p_direct, r.p_hier, r.diff));
          return rows;
        },
        py::arg("layers"), py::arg("epsilon_grid"), "Rows of (epsilon, p_direct, p_hier, diff).");

  // heterogeneous competences
  m.def("elementary_symmetric",
        [](const std::vector<double>& x, const std::string& method) {
          if (method == "newton") return elementary_symmetric_newton(x);
          if (method == "convolution") return elementary_symmetric_convolution(x);
          throw py::value_error("method must be 'convolution' or 'newton'");
        },
        py::arg("x"), py::arg("method") = "convolution");
  m.def("poisson_binomial_pmf",
        [](const std::vector<double>& p) {
          const auto dist = poisson_binomial_pmf(probs(p));
          return std::vector<double>(dist.pmf().begin(), dist.pmf().end());
        },
        py::arg("probs"));
  m.def("majority_prob", [](const std::vector<double>& p) { return majority_prob(probs(p)).value(); },
        py::arg("probs"));
  m.def("hetero_two_tier", [](const std::vector<GroupTuple>& g) { return hetero_two_tier(to_system(g)).value(); },
        py::arg("groups"), "groups: list of (effective_size, competence, abstention)");
  m.def("hetero_direct", [](const std::vector<double>& p) { return hetero_direct(probs(p)).value(); },
        py::arg("voter_probs"));

  // abstention
  m.def("uniform_abstention_tier",
        [](std::int64_t k, double s, double a) {
          return uniform_abstention_tier(k, Probability(s), Probability(a)).value();
        },
        py::arg("k"), py::arg("success"), py::arg("alpha"));
  m.def("uniform_abstention_two_tier",
        [](std::int64_t k, std::int64_t l, double e, double a) {
          return uniform_abstention_two_tier(k, l, Probability(e), Probability(a)).value();
        },
        py::arg("k"), py::arg("l"), py::arg("epsilon"), py::arg("alpha"));
  m.def("effective_sizes",
        [](const std::vector<std::int64_t>& sizes, const std::vector<double>& alphas,
           const std::vector<double>& epsilons) {
          const auto system = build_hetero_system(sizes, probs(alphas), probs(epsilons));
          std::vector<std::int64_t> out;
          for (const auto& g : system.groups()) out.push_back(g.effective_size());
          return out;
        },
        py::arg("base_sizes"), py::arg("alphas"), py::arg("epsilons"));

  // bounds
  m.def("hoeffding_hier_bound", [](const std::vector<GroupTuple>& g) { return bound_tuple(hoeffding_hier_bound(to_system(g))); },
        py::arg("groups"), "Returns (bound, valid).");
  m.def("hoeffding_direct_bound", [](const std::vector<double>& p) { return bound_tuple(hoeffding_direct_bound(probs(p))); },
        py::arg("voter_probs"), "Returns (bound, valid).");

  // analysis
  m.def("pivotal_derivative", [](std::int64_t n, double e) { return pivotal_derivative(n, Probability(e)); },
        py::arg("n_voters"), py::arg("epsilon"));
  m.def("hier_slope_at_half", &hier_slope_at_half, py::arg("k"), py::arg("n_layers"));
  m.def("direct_slope_at_half", &direct_slope_at_half, py::arg("n_voters"));
  m.def("asymptotic_slope", &asymptotic_slope, py::arg("k_prime"));
  m.def("two_tier_slope_product", &two_tier_slope_product, py::arg("k"), py::arg("l"));
  m.def("find_worst_two_tier",
        [](std::int64_t nd, double e) { return report_dict(find_worst_two_tier(nd, Probability(e))); },
        py::arg("nd"), py::arg("epsilon"));
  m.def("find_worst_multi_tier", [](std::int64_t nd, int n) { return report_dict(find_worst_multi_tier(nd, n)); },
        py::arg("nd"), py::arg("n_layers"));
  m.def("fewest_voters", [](const std::vector<std::int64_t>& layers) { return fewest_voters(layers); },
        py::arg("layers"));
  m.def("find_fewest_voters_layout",
        [](std::int64_t nd, int n) { return report_dict(find_fewest_voters_layout(nd, n)); }, py::arg("nd"),
        py::arg("n_layers"));
  m.def("theorem1_verify",
        [](std::int64_t k, int n, int grid) {
          const auto r = theorem1_verify(k, n, grid);
          py::dict d;
          d["passed"] = r.passed;
          d["sign_violations"] = r.sign_violations;
          d["max_equality_gap"] = r.max_equality_gap;
          d["slope_direct"] = r.slope_direct;
          d["slope_hier"] = r.slope_hier;
          return d;
        },
        py::arg("k"), py::arg("n_layers"), py::arg("grid_points") = 999);

  // simulation
  m.def("simulate_hierarchy",
        [](std::vector<std::int64_t> layers, double e, std::int64_t trials, std::uint64_t seed) {
          return estimate_dict(
              simulate(SimConfig{trials, seed, TreeSystem{HierarchySpec(std::move(layers)), Probability(e)}}));
        },
        py::arg("layers"), py::arg("epsilon"), py::arg("trials"), py::arg("seed"));
  m.def("simulate_hetero",
        [](const std::vector<GroupTuple>& g, std::int64_t trials, std::uint64_t seed) {
          return estimate_dict(simulate(SimConfig{trials, seed, to_system(g)}));
        },
        py::arg("groups"), py::arg("trials"), py::arg("seed"));
  m.def("simulate_direct",
        [](const std::vector<double>& p, std::int64_t trials, std::uint64_t seed) {
          return estimate_dict(simulate(SimConfig{trials, seed, DirectSystem{probs(p)}}));
        },
        py::arg("voter_probs"), py::arg("trials"), py::arg("seed"));
}
