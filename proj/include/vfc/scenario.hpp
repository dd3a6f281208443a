#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/quadrature.hpp"

namespace vfc {

struct ManifoldSpec {
    std::string kind = "sphere";  // sphere | product | surface | torus
    int dim = 3;
    double radius = 1.0;
    int k = 1, l = 1;                      // product factors
    double r = 0.7071067811865476, s = 0.7071067811865476;
    std::string surface = "spherical";     // spherical | flat | hyperbolic
    double radius_max = 2.0;
    std::array<double, 2> tau{0.0, 1.0};   // torus modulus
};

struct FieldSpec {
    // hopf | projected_hopf | ambient_quadratic | product | e_theta | e_r | constant | zero
    std::string kind = "hopf";
    double t = 1.0;
    std::array<double, 3> coeffs{1, 0, 0};
    std::uint64_t seed = 1;
    double scale = 0.15;   // ambient_quadratic amplitude
    double a = 0.7071067811865476, b = 0.7071067811865476;
    std::vector<double> components;
    bool normalize = false;
};

struct FutakiSpec {
    std::vector<double> w{1, 1};
    std::vector<double> b{1, 0};
    int nodes = 200;
};

struct OptimizerSpec {
    std::vector<int> shape{24, 24, 24};
    int max_iters = 500;
    double tol = 5e-3;
    double initial_step = 0.1;
    double perturbation = 0.1;
    std::uint64_t seed = 1;
};

struct Scenario {
    std::string task;  // verify | residual | functionals | futaki | optimize | reproduce
    std::optional<ManifoldSpec> manifold;
    std::optional<FieldSpec> field;
    GridOptions grid;
    double tolerance = 1e-6;
    int samples = 100;        // random points for pointwise checks
    std::uint64_t seed = 1;
    FutakiSpec futaki;
    OptimizerSpec optimizer;
    std::string suite = "all";
    nlohmann::json expect = nlohmann::json::object();  // functionals: name -> expected value
};

// VFC_TOLERANCE when set and parseable, otherwise 1e-6.
double default_tolerance();

// Throws ParseError; messages carry the JSON pointer of the offending key.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& s);

ChartManifold build_manifold(const ManifoldSpec& m);
SectionField build_field(const FieldSpec& f, const ManifoldSpec& m, const ChartManifold& M);

}  // namespace vfc
