#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gegtau/eig.hpp"
#include "json_out.hpp"

namespace gegtau::cli {

/// Grid overrides for a suite; empty vectors select the suite defaults.
struct SuiteGrid {
  std::vector<double> gammas;
  std::vector<int> ns;
};

struct SuiteResult {
  bool pass = true;
  std::string first_failure;
  std::size_t points = 0;
  Json detail = Json::array();
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteGrid& grid, unsigned jobs, const Tolerances& tol);

/// The grid a suite will actually use, for the manifest.
SuiteGrid resolved_grid(std::string_view name, const SuiteGrid& grid);

}  // namespace gegtau::cli
