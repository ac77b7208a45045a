#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ncrat/io.h"

namespace ncrat {

/// One CLI job. Unset parameters take the defaults of the owning module.
struct JobSpec {
  /// rank, minimize, learn, realize, fock-verify, kronecker1d, haagerup or
  /// pipeline.
  std::string command;
  std::optional<std::filesystem::path> series;
  std::optional<std::filesystem::path> rep;
  std::optional<std::filesystem::path> coeffs;
  std::optional<std::string> expr;
  std::optional<int> d;
  std::optional<int> N;
  std::optional<int> L;
  std::optional<int> kmax;
  std::optional<int> mmax;
  std::optional<double> tol;
  std::optional<double> rel_tol;
  /// Numeric (SVD) Hankel ranks instead of exact ones.
  bool numeric = false;
  /// realize: cross-check against a sparse LU solve of I - V.
  bool direct = false;
  /// Report destination; stdout when unset.
  std::optional<std::filesystem::path> out;
};

inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

struct JobResult {
  int exit_code = kExitError;
  Json report;
};

/// Runs the job and builds its report. Never throws: failures become
/// {"status": "error", ...} with exit code 1.
JobResult execute(const JobSpec& job);

/// execute() followed by writing the report to job.out (or stdout).
int run(const JobSpec& job);

}  // namespace ncrat
