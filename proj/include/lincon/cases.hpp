#pragma once

// Reproduction cases for the worked examples: each recomputes a published
// number or identity from the checked-in fixtures and reports PASS or FAIL
// with the measured residuals.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lincon/io.hpp"

namespace lincon::cases {

struct CaseResult {
  std::string id;
  bool pass = false;
  io::json data = io::json::object();
  // Failure reason or error text; empty on success.
  std::string message;
};

// In the order "check all" reports them.
const std::vector<std::string>& case_ids();

// Resolves aliases ("frets" -> "frets_mle"). Throws InputError for unknown
// ids.
std::string canonical_id(std::string_view id);

// Library errors inside a case turn into a failed result.
CaseResult run_case(std::string_view id, const std::filesystem::path& root, std::uint64_t seed = 0);

// Runs every case concurrently; results come back in case_ids() order.
std::vector<CaseResult> run_all(const std::filesystem::path& root, std::uint64_t seed = 0);

}  // namespace lincon::cases
